#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "abplab/closed_form.hpp"
#include "abplab/error.hpp"
#include "abplab/pucci.hpp"

using namespace abplab;

namespace {

SymMatrix random_sym(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, d(rng));
  return m;
}

Eigen::MatrixXd to_eigen(const SymMatrix& m) {
  const int n = m.dim();
  Eigen::MatrixXd E(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) E(i, j) = m(i, j);
  return E;
}

}  // namespace

TEST(Pucci, OrderingDualityAndSubadditivity) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u01(0.1, 3.0);
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 300; ++trial) {
      const double lam = u01(rng);
      const double Lam = lam + u01(rng);
      const SymMatrix M = random_sym(rng, n), N = random_sym(rng, n);
      const double t = u01(rng);
      const double tol = 1e-12 * (1.0 + M.frobenius() + N.frobenius()) * Lam;
      EXPECT_LE(pucci_minus(M, lam, Lam), pucci_plus(M, lam, Lam) + tol);
      EXPECT_NEAR(pucci_minus(M, lam, Lam), -pucci_plus(-M, lam, Lam), tol);
      EXPECT_NEAR(pucci_plus(t * M, lam, Lam), t * pucci_plus(M, lam, Lam), tol * (1 + t));
      EXPECT_NEAR(pucci_minus(t * M, lam, Lam), t * pucci_minus(M, lam, Lam), tol * (1 + t));
      EXPECT_LE(pucci_plus(M, lam, Lam) + pucci_minus(N, lam, Lam), pucci_plus(M + N, lam, Lam) + tol);
      EXPECT_LE(pucci_plus(M + N, lam, Lam), pucci_plus(M, lam, Lam) + pucci_plus(N, lam, Lam) + tol);
      EXPECT_NEAR(pucci_plus(M, lam, lam), lam * M.trace(), tol);
      EXPECT_NEAR(pucci_minus(M, lam, lam), lam * M.trace(), tol);
    }
}

TEST(Pucci, ExtremalOverCoefficientMatrices) {
  // M+(X) = max tr(A X) over symmetric A with spectrum in [lambda, Lambda],
  // attained at A = Q diag(Lambda on e >= 0, lambda on e < 0) Q^T.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> c(0.5, 2.0);
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 200; ++trial) {
      const SymMatrix X = random_sym(rng, n);
      const double lam = 0.5, Lam = 2.0;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(X));
      Eigen::VectorXd w(n);
      for (int k = 0; k < n; ++k) w[k] = es.eigenvalues()[k] >= 0 ? Lam : lam;
      const Eigen::MatrixXd Astar = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose();
      EXPECT_NEAR((Astar * to_eigen(X)).trace(), pucci_plus(X, lam, Lam), 1e-12);

      const Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(Eigen::MatrixXd::Random(n, n)).householderQ();
      Eigen::VectorXd r(n);
      for (int k = 0; k < n; ++k) r[k] = c(rng);
      const Eigen::MatrixXd A = Q * r.asDiagonal() * Q.transpose();
      const double trAX = (A * to_eigen(X)).trace();
      EXPECT_LE(trAX, pucci_plus(X, lam, Lam) + 1e-12);
      EXPECT_GE(trAX, pucci_minus(X, lam, Lam) - 1e-12);
    }
}

TEST(Pucci, InfiniteCoefficients) {
  const Spectrum pos{2, {0.0, 1.0, 0.0}};
  const Spectrum neg{2, {-1.0, 0.0, 0.0}};
  EXPECT_DOUBLE_EQ(pucci_plus(pos, INFINITY, 1.0), 1.0);
  EXPECT_THROW(pucci_plus(neg, INFINITY, 1.0), PreconditionError);
  EXPECT_DOUBLE_EQ(pucci_plus(neg, 0.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(pucci_minus(neg, 0.5, 2.0), -2.0);
}

TEST(StrongResidual, BumpIsASubsolutionWithMatchingRhs) {
  const auto g = Grid::build(GridSpec::ball(2, 1.0 / 16.0));
  const EllipticityPair pair = constant_profile(1.0, 1.0);
  const ScalarField u = closed_form("bump").sample(g);
  const ScalarField f = ScalarField::constant(g, -1.0);
  EXPECT_TRUE(strong_residual(u, pair, f, plus_geq).satisfied);
  EXPECT_TRUE(strong_residual(u, pair, f, minus_leq).satisfied);
  const ScalarField f_bad = ScalarField::constant(g, -0.5);
  const PucciResidual r = strong_residual(u, pair, f_bad, plus_geq);
  EXPECT_FALSE(r.satisfied);
  EXPECT_NEAR(r.worst, -0.5, 1e-9);
}
