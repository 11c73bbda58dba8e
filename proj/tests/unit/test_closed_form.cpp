#include <gtest/gtest.h>

#include <cmath>

#include "abplab/closed_form.hpp"
#include "abplab/error.hpp"

using namespace abplab;

namespace {

// Second central difference with step d of the catalog value.
double fd(const ClosedForm& u, Point x, int n, int i, int j, double d) {
  auto at = [&](double si, double sj) {
    Point y = x;
    y[i] += si;
    y[j] += sj;
    return u(y, n);
  };
  if (i == j) return (at(d, 0) - 2.0 * u(x, n) + at(-d, 0)) / (d * d);
  return (at(d, d) - at(d, -d) - at(-d, d) + at(-d, -d)) / (4.0 * d * d);
}

}  // namespace

TEST(ClosedForm, HessiansMatchFiniteDifferences) {
  const std::vector<std::pair<std::string, int>> cases{
      {"bump", 2},   {"bump", 3},         {"neg_bump", 2}, {"two_minus_r2", 2}, {"y2cosx", 2}, {"xy", 2},
      {"x2", 2},     {"cosh_x", 2},       {"cos_x_cosh_y", 2}, {"fractional_solution(0.55)", 2},
      {"quadratic(1,0.5,-2,1,1,0)", 2}};
  const Point x{0.31, 0.42, 0.17};
  for (const auto& [id, n] : cases) {
    const ClosedForm u = closed_form(id);
    const auto H = u.hessian(x, n);
    ASSERT_TRUE(H.has_value()) << id;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) EXPECT_NEAR((*H)(i, j), fd(u, x, n, i, j, 1e-4), 1e-5) << id;
  }
}

TEST(ClosedForm, KinksHaveNoHessian) {
  EXPECT_FALSE(closed_form("abs").hessian(Point{0.0, 0.0, 0.0}, 1).has_value());
  EXPECT_FALSE(closed_form("sqrt_r").hessian(Point{0.0, 0.0, 0.0}, 2).has_value());
  EXPECT_THROW(closed_form("nope"), CatalogError);
}

TEST(Manufactured, Y2CosXSolvesItsOperator) {
  const auto g = Grid::build(GridSpec::ball(2, 1.0 / 16.0));
  const ManufacturedRhs m = manufactured_rhs(closed_form("y2cosx"), linear_operator("y2cosx"), g);
  for (std::size_t i = 0; i < g->size(); ++i) EXPECT_NEAR(m.f[i], 0.0, 1e-14);
}

TEST(Manufactured, FractionalSolutionIsHarmonicForTheExtension) {
  for (double s : {0.3, 0.55, 0.8}) {
    const auto pair = fractional_s_profile(s);
    const auto g = Grid::build(pair.domain(1.0 / 16.0));
    const std::string args = "(" + std::to_string(s) + ")";
    const ManufacturedRhs m =
        manufactured_rhs(closed_form("fractional_solution" + args), linear_operator("fractional" + args), g);
    for (std::size_t i : g->interior_nodes()) EXPECT_NEAR(m.f[i], 0.0, 1e-12);
  }
}

TEST(Manufactured, PucciRhsOfTheBump) {
  const auto g = Grid::build(GridSpec::ball(2, 1.0 / 8.0));
  const ManufacturedRhs m = manufactured_rhs(closed_form("bump"), constant_profile(1.0, 3.0), PucciOperator::minus, g);
  // Hessian -I/2: M- = Lambda * (-1/2) * 2.
  for (std::size_t i = 0; i < g->size(); ++i) EXPECT_DOUBLE_EQ(m.f[i], -3.0);
}
