#include <gtest/gtest.h>

#include <random>

#include "abplab/closed_form.hpp"
#include "abplab/contact.hpp"
#include "abplab/error.hpp"
#include "oracles.hpp"

using namespace abplab;

namespace {

ScalarField random_field(const GridPtr& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(g->size());
  for (double& x : v) x = d(rng);
  return ScalarField(g, v);
}

void expect_same(const Mask& a, const Mask& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]) << "node " << i;
}

}  // namespace

TEST(Envelope, MatchesChordOracle1D) {
  std::mt19937_64 rng(2);
  const auto g = Grid::build(GridSpec::box(1, 1.0 / 32.0));
  for (int trial = 0; trial < 5; ++trial) {
    const ScalarField u = random_field(g, rng);
    const ScalarField env = concave_envelope(u);
    std::vector<double> x, uv;
    for (std::size_t i = 0; i < g->size(); ++i) {
      x.push_back(g->position(i)[0]);
      uv.push_back(u[i]);
    }
    // Chord oracle needs ascending x.
    std::vector<std::size_t> order(g->size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });
    std::vector<double> xs, us;
    for (auto i : order) {
      xs.push_back(x[i]);
      us.push_back(uv[i]);
    }
    const auto ref = oracle::chord_envelope_1d(xs, us);
    for (std::size_t k = 0; k < order.size(); ++k) EXPECT_NEAR(env[order[k]], ref[k], 1e-12);
  }
}

TEST(Contact, MatchesLpOracle1D) {
  std::mt19937_64 rng(4);
  const auto g = Grid::build(GridSpec::box(1, 1.0 / 40.0));
  for (int trial = 0; trial < 10; ++trial) {
    const ScalarField u = random_field(g, rng);
    const double tol = 1e-9;
    expect_same(upper_contact_set(u, tol).member, oracle::lp_contact_1d(u, tol));
    expect_same(slope_restricted_contact(u, 5.0, tol).member, oracle::lp_contact_1d(u, tol, 5.0));
  }
}

TEST(Contact, MatchesLpOracle2D) {
  std::mt19937_64 rng(6);
  const auto g = Grid::build(GridSpec::box(2, 1.0 / 8.0));
  for (int trial = 0; trial < 4; ++trial) {
    const ScalarField u = random_field(g, rng);
    const double tol = 1e-9;
    expect_same(upper_contact_set(u, tol).member, oracle::lp_contact_2d(u, tol));
    expect_same(slope_restricted_contact(u, 4.0, tol).member, oracle::lp_contact_2d(u, tol, 4.0));
  }
}

TEST(Contact, CanonicalCases) {
  const auto g = Grid::build(GridSpec::ball(2, 1.0 / 16.0));
  const ContactMask concave = upper_contact_set(closed_form("bump").sample(g));
  EXPECT_EQ(concave.count(), g->interior_nodes().size());
  EXPECT_EQ(upper_contact_set(closed_form("x2").sample(g)).count(), 0u);
  EXPECT_EQ(upper_contact_set(closed_form("abs").sample(g)).count(), 0u);
  EXPECT_LE(witness_defect(concave, closed_form("bump").sample(g)), 0.0);
}

TEST(Contact, SlopeRestrictionShrinksTheSet) {
  const auto g = Grid::build(GridSpec::ball(2, 1.0 / 16.0));
  const ScalarField u = closed_form("bump").sample(g);
  // Gradient of (1 - |x|^2)/4 is -x/2, so |p| <= r keeps |x| <= 2 r up to the
  // O(h) spread of the discrete superdifferential.
  const double h = g->spacing();
  const ContactMask m = slope_restricted_contact(u, 0.25, 1e-9);
  for (std::size_t i : g->interior_nodes()) {
    const double r = norm(g->position(i), 2);
    if (r <= 0.5 - 2 * h) EXPECT_TRUE(m.member[i]);
    if (r >= 0.5 + 2 * h) EXPECT_FALSE(m.member[i]);
  }
  EXPECT_THROW(slope_restricted_contact(u, 0.0), PreconditionError);
}

TEST(Contact, MinNormPoint) {
  const Point pts[] = {{1.0, 1.0, 0.0}, {1.0, -1.0, 0.0}};
  const Point p = min_norm_point(pts, 2);
  EXPECT_NEAR(p[0], 1.0, 1e-12);
  EXPECT_NEAR(p[1], 0.0, 1e-12);
  const Point tri[] = {{1.0, 0.0, 0.0}, {-1.0, 1.0, 0.0}, {-1.0, -1.0, 0.0}};
  EXPECT_NEAR(norm(min_norm_point(tri, 2), 2), 0.0, 1e-12);
}

TEST(Contact, StabilityUnderSmallPerturbations) {
  std::mt19937_64 rng(8);
  const auto g = Grid::build(GridSpec::ball(2, 1.0 / 16.0));
  const ScalarField u = closed_form("y2cosx").sample(g);
  std::vector<ScalarField> deltas;
  for (double eps : {1e-3, 1e-6}) deltas.push_back(random_field(g, rng).scaled(eps));
  EXPECT_TRUE(contact_stability_probe(u, deltas).all_contained);
}
