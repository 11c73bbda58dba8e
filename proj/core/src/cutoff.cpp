#include "abplab/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "abplab/error.hpp"

namespace abplab {

CutoffSpec::CutoffSpec(double beta, int n) : beta_(beta), n_(n) {
  if (!(beta >= 2.0)) throw PreconditionError("cutoff_eta: beta must be >= 2");
  if (n < 1 || n > 3) throw PreconditionError("cutoff_eta: n must be 1, 2 or 3");
}

namespace {
double slack(const Point& x, int n) { return std::max(0.0, 1.0 - dot(x, x, n)); }
}  // namespace

double CutoffSpec::eta(const Point& x) const { return std::pow(slack(x, n_), beta_); }

Point CutoffSpec::gradient(const Point& x) const {
  const double c = -2.0 * beta_ * std::pow(slack(x, n_), beta_ - 1.0);
  Point g{0.0, 0.0, 0.0};
  for (int i = 0; i < n_; ++i) g[i] = c * x[i];
  return g;
}

SymMatrix CutoffSpec::hessian(const Point& x) const {
  const double s = slack(x, n_);
  const double diag = -2.0 * beta_ * std::pow(s, beta_ - 1.0);
  const double outer = 4.0 * beta_ * (beta_ - 1.0) * std::pow(s, beta_ - 2.0);
  SymMatrix m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j) m.set(i, j, (i == j ? diag : 0.0) + outer * x[i] * x[j]);
  return m;
}

double CutoffSpec::radial_eigenvalue(const Point& x) const {
  const double s = slack(x, n_);
  return 4.0 * beta_ * (beta_ - 1.0) * std::pow(s, beta_ - 2.0) * dot(x, x, n_) -
         2.0 * beta_ * std::pow(s, beta_ - 1.0);
}

double CutoffSpec::tangential_eigenvalue(const Point& x) const {
  return -2.0 * beta_ * std::pow(slack(x, n_), beta_ - 1.0);
}

Spectrum CutoffSpec::eigenvalues(const Point& x) const {
  Spectrum s{n_, {0.0, 0.0, 0.0}};
  s.values[0] = radial_eigenvalue(x);
  for (int i = 1; i < n_; ++i) s.values[i] = tangential_eigenvalue(x);
  std::sort(s.values.begin(), s.values.begin() + n_);
  return s;
}

double CutoffSpec::sign_flip_radius() const { return 1.0 / std::sqrt(2.0 * beta_ - 1.0); }

double CutoffSpec::threshold_beta(double alpha) {
  if (!(alpha > 0.0)) throw PreconditionError("threshold_beta: alpha must be positive");
  return 1.0 + 1.0 / (2.0 * alpha * alpha);
}

CutoffFields cutoff_eta(double beta, const GridPtr& grid) {
  const CutoffSpec spec(beta, grid->dim());
  const int n = grid->dim();
  std::vector<std::vector<double>> grad(n, std::vector<double>(grid->size()));
  std::vector<SymMatrix> hess;
  hess.reserve(grid->size());
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const Point x = grid->position(i);
    const Point g = spec.gradient(x);
    for (int a = 0; a < n; ++a) grad[a][i] = g[a];
    hess.push_back(spec.hessian(x));
  }
  std::vector<ScalarField> gradient;
  for (auto& v : grad) gradient.emplace_back(grid, std::move(v));
  return CutoffFields{ScalarField::sample(grid, [&](const Point& x) { return spec.eta(x); }), std::move(gradient),
                      HessianField(grid, std::move(hess)),
                      ScalarField::sample(grid, [&](const Point& x) { return spec.radial_eigenvalue(x); }),
                      ScalarField::sample(grid, [&](const Point& x) { return spec.tangential_eigenvalue(x); })};
}

CauchySchwarzResult matrix_cauchy_schwarz_check(const Point& b, const Point& c, double eta, int n,
                                                int random_directions, unsigned seed) {
  if (!(eta > 0.0)) throw PreconditionError("matrix_cauchy_schwarz_check: eta must be positive");
  std::vector<Point> dirs;
  for (int i = 0; i < n; ++i) {
    Point e{0.0, 0.0, 0.0};
    e[i] = 1.0;
    dirs.push_back(e);
  }
  for (const Point& v : {b, c}) dirs.push_back(v);
  Point s{}, d{};
  for (int i = 0; i < n; ++i) {
    s[i] = b[i] + c[i];
    d[i] = b[i] - c[i];
  }
  dirs.push_back(s);
  dirs.push_back(d);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < random_directions; ++k) {
    Point a{0.0, 0.0, 0.0};
    for (int i = 0; i < n; ++i) a[i] = gauss(rng);
    dirs.push_back(a);
  }

  CauchySchwarzResult r;
  for (Point a : dirs) {
    const double len = norm(a, n);
    if (len == 0.0) continue;
    for (int i = 0; i < n; ++i) a[i] /= len;
    const double ab = dot(a, b, n);
    const double ac = dot(a, c, n);
    const double rhs = ac * ac / eta + eta * ab * ab;
    const double lhs = 2.0 * std::abs(ab * ac);
    const double sl = rhs - lhs;
    ++r.directions;
    if (sl < r.worst_slack) {
      r.worst_slack = sl;
      r.worst_direction = a;
    }
    if (sl < -1e-12 * std::max(1.0, rhs)) r.holds = false;
  }
  return r;
}

}  // namespace abplab
