#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "abplab/error.hpp"
#include "abplab/field_io.hpp"
#include "abplab/grid.hpp"

using namespace abplab;

TEST(Grid, BoxNodeCountsAndClassification) {
  const auto g = Grid::build(GridSpec::box(2, 0.25));
  EXPECT_EQ(g->size(), 81u);
  EXPECT_EQ(g->interior_nodes().size(), 49u);
  EXPECT_EQ(g->boundary_nodes().size(), 32u);
  for (std::size_t i = 0; i < g->size(); ++i) EXPECT_NE(g->is_interior(i), g->is_boundary(i));
}

TEST(Grid, BallInteriorKeepsOneSpacingFromTheSphere) {
  const double h = 1.0 / 16.0;
  const auto g = Grid::build(GridSpec::ball(2, h));
  for (std::size_t i : g->interior_nodes()) EXPECT_LE(norm(g->position(i), 2), 1.0 - h + 1e-12);
  for (std::size_t i : g->interior_nodes())
    for (int a = 0; a < 2; ++a) {
      EXPECT_TRUE(g->neighbor(i, a, 1).has_value());
      EXPECT_TRUE(g->neighbor(i, a, -1).has_value());
    }
}

TEST(Grid, RejectsBadSpacing) {
  EXPECT_THROW(Grid::build(GridSpec::box(2, 0.3)), PreconditionError);
  EXPECT_THROW(Grid::build(GridSpec::box(2, -1.0)), PreconditionError);
  EXPECT_THROW(Grid::build(GridSpec::box(4, 0.25)), PreconditionError);
  EXPECT_THROW(Grid::build(GridSpec::ball(2, 5.0)), PreconditionError);
}

TEST(Grid, VolumeAndSurface) {
  const auto g = Grid::build(GridSpec::ball(3, 0.25));
  EXPECT_NEAR(g->domain_volume(), 4.0 * std::numbers::pi / 3.0, 1e-12);
  EXPECT_NEAR(g->surface_area(), 4.0 * std::numbers::pi, 1e-12);
  const auto b = Grid::build(GridSpec::box(1, 0.5));
  EXPECT_DOUBLE_EQ(b->surface_area(), 2.0);
}

TEST(ScalarField, RejectsNaNAndInfUnlessExtended) {
  const auto g = Grid::build(GridSpec::box(1, 0.5));
  std::vector<double> v(g->size(), 0.0);
  v[1] = NAN;
  EXPECT_THROW(ScalarField(g, v), PreconditionError);
  v[1] = INFINITY;
  EXPECT_THROW(ScalarField(g, v), PreconditionError);
  EXPECT_NO_THROW(ScalarField(g, v, true));
  v[1] = NAN;
  EXPECT_THROW(ScalarField(g, v, true), PreconditionError);
}

TEST(ScalarField, LinearCombinationNeedsTheSameGrid) {
  const auto g1 = Grid::build(GridSpec::box(1, 0.5));
  const auto g2 = Grid::build(GridSpec::box(1, 0.5));
  const auto a = ScalarField::constant(g1, 1.0);
  const auto b = ScalarField::constant(g2, 1.0);
  EXPECT_THROW(a + b, PreconditionError);
  const auto c = linear_combination(2.0, a, 3.0, ScalarField::constant(g1, 1.0));
  EXPECT_DOUBLE_EQ(c[2], 5.0);
}

TEST(Hessian, ExactOnQuadratics) {
  const auto g = Grid::build(GridSpec::ball(3, 0.125));
  const auto u = ScalarField::sample(g, [](const Point& x) {
    return 1.5 * x[0] * x[0] - 0.5 * x[1] * x[1] + 2.0 * x[0] * x[1] + 0.25 * x[1] * x[2] + x[2] - 3.0;
  });
  const HessianField H = central_hessian(u);
  for (std::size_t i : g->interior_nodes()) {
    const SymMatrix& m = H.matrix(i);
    EXPECT_NEAR(m(0, 0), 3.0, 1e-9);
    EXPECT_NEAR(m(1, 1), -1.0, 1e-9);
    EXPECT_NEAR(m(2, 2), 0.0, 1e-9);
    EXPECT_NEAR(m(0, 1), 2.0, 1e-9);
    EXPECT_NEAR(m(1, 2), 0.25, 1e-9);
    EXPECT_NEAR(m(0, 2), 0.0, 1e-9);
  }
}

TEST(Norms, ConstantOnTheBox) {
  const auto g = Grid::build(GridSpec::box(2, 0.125));
  const Mask in = interior_mask(*g);
  const double vol = static_cast<double>(mask_count(in)) * g->cell_volume();
  const auto one = ScalarField::constant(g, 2.0);
  EXPECT_NEAR(lp_norm(one, 2.0, in), 2.0 * std::sqrt(vol), 1e-12);
  EXPECT_NEAR(lp_norm(one, INFINITY, in), 2.0, 0.0);
}

TEST(Norms, SingularWeightRules) {
  const auto g = Grid::build(GridSpec::box(1, 0.25));
  const Mask in = interior_mask(*g);
  std::vector<double> w(g->size(), 1.0);
  std::size_t mid = 0;
  for (std::size_t i = 0; i < g->size(); ++i)
    if (std::abs(g->position(i)[0]) < 1e-12) mid = i;
  w[mid] = INFINITY;
  const ScalarField weight(g, w, true);
  auto gfn = ScalarField::sample(g, [](const Point& x) { return x[0]; });
  EXPECT_NO_THROW(weighted_lp_norm(gfn, weight, 2.0, in));
  EXPECT_THROW(weighted_lp_norm(ScalarField::constant(g, 1.0), weight, 2.0, in), HypothesisFailure);
  EXPECT_THROW(weighted_lp_norm(gfn, weight, 0.5, in), PreconditionError);
}

TEST(Distribution, CountsNodesAboveThreshold) {
  const auto g = Grid::build(GridSpec::box(2, 0.125));
  const auto u = ScalarField::sample(g, [](const Point& x) { return x[0]; });
  const Cube K{Point{0.0, 0.0, 0.0}, 0.25};
  const MeasureReport r = distribution_function(u, K, 0.0);
  // Nodes with x in {0.125, 0.25} and y in {-0.25..0.25}: cube is open on its faces or not;
  // either way the count is a whole number of cells and the half above 0 is < the cube.
  EXPECT_GT(r.measure, 0.0);
  EXPECT_LT(r.measure, r.cube_measure);
  EXPECT_THROW(cube_mask(*g, Cube{Point{0.9, 0.0, 0.0}, 0.5}), PreconditionError);
}

TEST(FieldIo, RoundTrip) {
  const auto g = Grid::build(GridSpec::ball(2, 0.25));
  const auto u = ScalarField::sample(g, [](const Point& x) { return std::sin(x[0]) + x[1] / 3.0; });
  std::stringstream ss;
  write_field(ss, u);
  const FieldSnapshot s = read_field(ss);
  const ScalarField back = snapshot_to_field(s, g);
  for (std::size_t i = 0; i < g->size(); ++i) EXPECT_EQ(back[i], u[i]);
}
