#include <gtest/gtest.h>

#include <random>

#include "abplab/error.hpp"
#include "abplab/exact.hpp"
#include "abplab/hull.hpp"

using namespace abplab;

TEST(Exact, ExpansionSignSurvivesCancellation) {
  const std::int64_t c[] = {1, -1, 1};
  const double v[] = {1e16, 1e16, 1.0};
  EXPECT_EQ(exact::sign_of_dot(c, v), 1);
  const std::int64_t d[] = {3, -1, -1, -1};
  const double w[] = {0.1, 0.1, 0.1, 0.1};
  // 3 * 0.1 - 0.1 - 0.1 - 0.1 in exact arithmetic on the double 0.1.
  EXPECT_EQ(exact::sign_of_dot(d, w), 0);
}

TEST(Exact, IntegerDeterminant) {
  std::int64_t m[9] = {2, 0, 0, 0, 3, 0, 1, 1, 4};
  EXPECT_EQ(exact::int_det(m, 3), 24);
}

namespace {

std::vector<Lattice> line(int n) {
  std::vector<Lattice> k;
  for (int i = 0; i < n; ++i) k.push_back({i, 0, 0});
  return k;
}

std::vector<Lattice> square(int n) {
  std::vector<Lattice> k;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) k.push_back({i, j, 0});
  return k;
}

}  // namespace

TEST(UpperHull, ConcaveParabolaUsesEveryPoint1D) {
  const auto k = line(9);
  std::vector<double> u;
  for (const auto& p : k) u.push_back(-(p[0] - 4.0) * (p[0] - 4.0));
  const UpperHull h = upper_hull(LiftedPoints{1, k, u});
  EXPECT_EQ(h.facets.size(), 8u);
}

TEST(UpperHull, ConvexParabolaHasOneFacet1D) {
  const auto k = line(9);
  std::vector<double> u;
  for (const auto& p : k) u.push_back((p[0] - 4.0) * (p[0] - 4.0));
  const UpperHull h = upper_hull(LiftedPoints{1, k, u});
  ASSERT_EQ(h.facets.size(), 1u);
}

TEST(UpperHull, FacetsAreUpperAndSupporting2D) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  const auto k = square(7);
  std::vector<double> u;
  for (std::size_t i = 0; i < k.size(); ++i) u.push_back(d(rng));
  const LiftedPoints pts{2, k, u};
  const UpperHull h = upper_hull(pts);
  ASSERT_FALSE(h.facets.empty());
  for (const auto& f : h.facets) {
    // Plane u = a + b k0 + c k1 through the three vertices.
    const auto& A = k[f[0]];
    const auto& B = k[f[1]];
    const auto& C = k[f[2]];
    const double det = double(B[0] - A[0]) * (C[1] - A[1]) - double(C[0] - A[0]) * (B[1] - A[1]);
    ASSERT_NE(det, 0.0);
    const double du1 = u[f[1]] - u[f[0]], du2 = u[f[2]] - u[f[0]];
    const double b = (du1 * (C[1] - A[1]) - du2 * (B[1] - A[1])) / det;
    const double c = ((B[0] - A[0]) * du2 - (C[0] - A[0]) * du1) / det;
    for (std::size_t j = 0; j < k.size(); ++j) {
      const double plane = u[f[0]] + b * (k[j][0] - A[0]) + c * (k[j][1] - A[1]);
      EXPECT_LE(u[j], plane + 1e-12);
    }
  }
}

TEST(UpperHull, AffineData) {
  const auto k = square(4);
  std::vector<double> u;
  for (const auto& p : k) u.push_back(0.5 * p[0] - 0.25 * p[1] + 1.0);
  const UpperHull h = upper_hull(LiftedPoints{2, k, u});
  EXPECT_TRUE(h.affine);
}

TEST(UpperHull, CollinearLatticeIsRejected) {
  std::vector<Lattice> k{{0, 0, 0}, {1, 1, 0}, {2, 2, 0}};
  std::vector<double> u{0.0, 1.0, 0.0};
  EXPECT_THROW(upper_hull(LiftedPoints{2, k, u}), PreconditionError);
}
