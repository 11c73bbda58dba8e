#include "abplab/pucci.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "abplab/error.hpp"

namespace abplab {

namespace {

double weighted(double coef, double group_sum) {
  if (group_sum == 0.0) return 0.0;
  if (!std::isfinite(coef)) {
    std::ostringstream os;
    os << "Pucci operator: non-finite ellipticity " << coef << " multiplies a nonzero eigenvalue sum " << group_sum;
    throw PreconditionError(os.str());
  }
  return coef * group_sum;
}

void split(const Spectrum& e, double& pos, double& neg) {
  pos = 0.0;
  neg = 0.0;
  for (int i = 0; i < e.n; ++i) {
    if (e.values[i] >= 0.0)
      pos += e.values[i];
    else
      neg += e.values[i];
  }
}

}  // namespace

double pucci_plus(const Spectrum& e, double lambda, double Lambda) {
  double pos, neg;
  split(e, pos, neg);
  return weighted(Lambda, pos) + weighted(lambda, neg);
}

double pucci_minus(const Spectrum& e, double lambda, double Lambda) {
  double pos, neg;
  split(e, pos, neg);
  return weighted(lambda, pos) + weighted(Lambda, neg);
}

double pucci_plus(const SymMatrix& m, double lambda, double Lambda) {
  return pucci_plus(sym_eigenvalues(m), lambda, Lambda);
}

double pucci_minus(const SymMatrix& m, double lambda, double Lambda) {
  return pucci_minus(sym_eigenvalues(m), lambda, Lambda);
}

double pucci_apply(PucciOperator op, const Spectrum& e, double lambda, double Lambda) {
  return op == PucciOperator::plus ? pucci_plus(e, lambda, Lambda) : pucci_minus(e, lambda, Lambda);
}

std::string Sense::name() const {
  std::string s = op == PucciOperator::plus ? "plus" : "minus";
  return s + (ineq == Inequality::geq ? "-geq" : "-leq");
}

namespace {

ScalarField apply_field(PucciOperator op, const SampledEllipticity& ell, const HessianField& H) {
  const Grid& g = H.grid();
  if (ell.lambda.grid_ptr() != H.grid_ptr()) throw PreconditionError("Pucci field: ellipticity sampled on another grid");
  std::vector<double> v(g.size(), 0.0);
  for (std::size_t i : g.interior_nodes()) v[i] = pucci_apply(op, H.eigenvalues(i), ell.lambda[i], ell.Lambda[i]);
  return ScalarField(H.grid_ptr(), std::move(v));
}

}  // namespace

ScalarField pucci_plus(const SampledEllipticity& ell, const HessianField& H) {
  return apply_field(PucciOperator::plus, ell, H);
}

ScalarField pucci_minus(const SampledEllipticity& ell, const HessianField& H) {
  return apply_field(PucciOperator::minus, ell, H);
}

ScalarField pucci_plus(const EllipticityPair& pair, const HessianField& H) {
  return pucci_plus(sample_ellipticity(pair, H.grid_ptr()), H);
}

ScalarField pucci_minus(const EllipticityPair& pair, const HessianField& H) {
  return pucci_minus(sample_ellipticity(pair, H.grid_ptr()), H);
}

PucciResidual strong_residual(const ScalarField& u, const EllipticityPair& pair, const ScalarField& f, Sense sense) {
  if (u.grid_ptr() != f.grid_ptr()) throw PreconditionError("strong_residual: u and f live on different grids");
  if (u.extended() || f.extended()) throw PreconditionError("strong_residual: u and f must be finite");
  const GridPtr& gp = u.grid_ptr();
  const Grid& g = *gp;
  const HessianField H = central_hessian(u);
  const SampledEllipticity ell = sample_ellipticity(pair, gp);
  const double h2 = g.spacing() * g.spacing();

  std::vector<double> res(g.size(), 0.0);
  PucciResidual r{gp, sense, ScalarField(gp, std::vector<double>(g.size(), 0.0)), Mask(g.size(), false),
                  Mask(g.size(), false)};
  std::size_t violating = 0;
  for (std::size_t i : g.interior_nodes()) {
    const double lo = ell.lambda[i];
    const double hi = ell.Lambda[i];
    if (!std::isfinite(lo) || !std::isfinite(hi)) continue;
    const Spectrum& e = H.eigenvalues(i);
    const double m = pucci_apply(sense.op, e, lo, hi);
    const double value = sense.ineq == Inequality::geq ? m - f[i] : f[i] - m;
    const double spectral = std::max(std::abs(e.min()), std::abs(e.max()));
    const double tol = 10.0 * h2 * (1.0 + std::abs(f[i]) + hi * spectral);
    res[i] = value;
    r.evaluated[i] = true;
    r.max_tolerance = std::max(r.max_tolerance, tol);
    r.max_abs = std::max(r.max_abs, std::abs(value));
    r.worst = std::min(r.worst, value);
    if (value < -tol) {
      r.violating[i] = true;
      ++violating;
    }
  }
  r.residual = ScalarField(gp, std::move(res));
  const std::size_t interior = g.interior_nodes().size();
  r.violation_measure = interior ? static_cast<double>(violating) / static_cast<double>(interior) : 0.0;
  r.violating_volume = static_cast<double>(violating) * g.cell_volume();
  r.allowed_volume = 4.0 * g.spacing() * g.surface_area();
  r.satisfied = r.violating_volume <= r.allowed_volume;
  return r;
}

}  // namespace abplab
