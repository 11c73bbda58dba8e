#include <gtest/gtest.h>

#include <cmath>

#include "abplab/ellipticity.hpp"
#include "abplab/error.hpp"

using namespace abplab;

TEST(Exponents, ThetaAndTau) {
  const auto e = derive_exponents(INFINITY, INFINITY, 2);
  EXPECT_DOUBLE_EQ(e.theta, 2.0);
  EXPECT_DOUBLE_EQ(e.tau, 2.0);
  const auto f = derive_exponents(8.0, 8.0, 2);
  // 1/theta = 1/2 - 1/8 - 1/8 = 1/4
  EXPECT_DOUBLE_EQ(f.theta, 4.0);
  EXPECT_DOUBLE_EQ(f.tau, 8.0 / 3.0);
  EXPECT_FALSE(f.violates_abp);
  const auto g = derive_exponents(4.0, 4.0, 2);
  EXPECT_TRUE(std::isinf(g.theta));
  EXPECT_TRUE(derive_exponents(2.0, 4.0, 2).violates_abp);
}

TEST(Admissible, ExplicitExponents) {
  EXPECT_TRUE(check_admissible(4.0, 4.0, 2, AdmissibilityMode::abp).admissible);
  EXPECT_FALSE(check_admissible(4.0, 4.0, 2, AdmissibilityMode::weak_harnack).admissible);
  EXPECT_TRUE(check_admissible(9.0, 9.0, 2, AdmissibilityMode::weak_harnack).admissible);
  EXPECT_FALSE(check_admissible(8.0, 8.0, 2, AdmissibilityMode::weak_harnack).admissible);
}

TEST(Admissible, GrushinWindow) {
  EXPECT_TRUE(check_admissible(grushin_alpha_profile(0.25), AdmissibilityMode::abp).admissible);
  EXPECT_TRUE(check_admissible(grushin_alpha_profile(0.49), AdmissibilityMode::abp).admissible);
  EXPECT_FALSE(check_admissible(grushin_alpha_profile(0.5), AdmissibilityMode::abp).admissible);
  EXPECT_FALSE(check_admissible(grushin_alpha_profile(0.8), AdmissibilityMode::abp).admissible);
  // Declared p = 0.9 / alpha is admissible only below alpha = 0.45.
  const auto near = check_admissible(grushin_alpha_profile(0.47), AdmissibilityMode::abp);
  EXPECT_TRUE(near.admissible);
  EXPECT_FALSE(near.declared_admissible);
  EXPECT_TRUE(near.conservative);
}

TEST(Admissible, FractionalWindow) {
  // One horizontal variable (dimension 2): 2/5 < s < 2/3.
  EXPECT_FALSE(check_admissible(fractional_s_profile(0.39), AdmissibilityMode::abp).admissible);
  EXPECT_TRUE(check_admissible(fractional_s_profile(0.41), AdmissibilityMode::abp).admissible);
  EXPECT_TRUE(check_admissible(fractional_s_profile(0.5), AdmissibilityMode::abp).admissible);
  EXPECT_TRUE(check_admissible(fractional_s_profile(0.66), AdmissibilityMode::abp).admissible);
  EXPECT_FALSE(check_admissible(fractional_s_profile(0.67), AdmissibilityMode::abp).admissible);
  // Two horizontal variables: 3/7 < s < 3/5.
  EXPECT_FALSE(check_admissible(fractional_s_profile(0.42, 2), AdmissibilityMode::abp).admissible);
  EXPECT_TRUE(check_admissible(fractional_s_profile(0.44, 2), AdmissibilityMode::abp).admissible);
  EXPECT_FALSE(check_admissible(fractional_s_profile(0.61, 2), AdmissibilityMode::abp).admissible);
}

TEST(Profiles, ParseRoundTrip) {
  for (const std::string text : {"constant(1,2)", "abs_gamma(1)", "y_squared", "grushin_alpha(0.25)",
                                 "fractional_s(0.55,1)"}) {
    const EllipticityPair p = parse_profile(text, 2);
    EXPECT_EQ(parse_profile(p.descriptor(), p.dim()).descriptor(), p.descriptor());
  }
  EXPECT_THROW(parse_profile("nope"), CatalogError);
  EXPECT_THROW(constant_profile(2.0, 1.0), PreconditionError);
}

TEST(Profiles, SamplingKeepsInfinities) {
  const auto g = Grid::build(GridSpec::ball(1, 0.25));
  const SampledEllipticity s = sample_ellipticity(abs_gamma_profile(1.0), g);
  const std::size_t mid = *g->find(Lattice{0, 0, 0});
  EXPECT_EQ(s.lambda[mid], 0.0);
  EXPECT_TRUE(std::isinf(s.inv_lambda[mid]));
}
