#include "abplab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "abplab/error.hpp"

namespace abplab {

namespace {

struct Row {
  std::size_t node;
  std::array<std::size_t, 6> nb{};
  std::array<double, 3> w{};
  double diag = 0.0;
  bool degenerate = false;
  int count = 0;
};

double row_residual(const Row& r, const std::vector<double>& u, double f, int n) {
  double s = -r.diag * u[r.node];
  for (int a = 0; a < n; ++a) s += r.w[a] * (u[r.nb[2 * a]] + u[r.nb[2 * a + 1]]);
  return s - f;
}

}  // namespace

SolveResult solve_linear_dirichlet(const LinearProblem& prob, const SolverOptions& opts) {
  const GridPtr& gp = prob.grid;
  const Grid& g = *gp;
  const int n = g.dim();
  if (static_cast<int>(prob.a.size()) != n) throw PreconditionError("solve_linear_dirichlet: need one coefficient per axis");
  for (const auto& a : prob.a)
    if (a.grid_ptr() != gp) throw PreconditionError("solve_linear_dirichlet: coefficient on another grid");
  if (prob.f.grid_ptr() != gp || prob.g.grid_ptr() != gp)
    throw PreconditionError("solve_linear_dirichlet: data on another grid");
  for (std::size_t i : g.boundary_nodes())
    if (!std::isfinite(prob.g[i])) throw PreconditionError("solve_linear_dirichlet: non-finite boundary data");

  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  std::vector<Row> rows;
  rows.reserve(g.interior_nodes().size());
  std::size_t degenerate = 0;
  for (std::size_t i : g.interior_nodes()) {
    Row r;
    r.node = i;
    double sum = 0.0;
    for (int a = 0; a < n; ++a) {
      const double c = prob.a[a][i];
      if (!(c >= 0.0) || !std::isfinite(c)) {
        std::ostringstream os;
        os << "solve_linear_dirichlet: coefficient a_" << a << " = " << c << " at node " << i;
        throw PreconditionError(os.str());
      }
      const auto fwd = g.neighbor(i, a, 1);
      const auto bwd = g.neighbor(i, a, -1);
      if (!fwd || !bwd) throw PreconditionError("solve_linear_dirichlet: interior node lacks a stencil neighbour");
      r.nb[2 * a] = *fwd;
      r.nb[2 * a + 1] = *bwd;
      r.w[a] = c * inv_h2;
      sum += c;
    }
    r.diag = 2.0 * sum * inv_h2;
    if (sum == 0.0) {
      if (prob.f[i] != 0.0) {
        std::ostringstream os;
        os << "solve_linear_dirichlet: degenerate node " << i << " (all coefficients vanish) with f = " << prob.f[i];
        throw PreconditionError(os.str());
      }
      r.degenerate = true;
      ++degenerate;
    }
    rows.push_back(r);
  }

  std::vector<double> u(g.size(), 0.0);
  for (std::size_t i : g.boundary_nodes()) u[i] = prob.g[i];

  const double omega = opts.omega ? *opts.omega : 2.0 / (1.0 + std::sin(std::numbers::pi * g.spacing() / g.diameter()));
  double fmax = 0.0;
  for (std::size_t i : g.interior_nodes()) fmax = std::max(fmax, std::abs(prob.f[i]));
  double diag_max = 0.0;
  for (const Row& r : rows) diag_max = std::max(diag_max, r.diag);
  // The residual cannot drop below the rounding error of the stencil itself.
  auto target_for = [&](const std::vector<double>& v) {
    double umax = 0.0;
    for (double x : v) umax = std::max(umax, std::abs(x));
    return std::max(opts.tol * (1.0 + fmax), 16.0 * std::numeric_limits<double>::epsilon() * diag_max * umax);
  };

  auto residual = [&]() {
    double r = 0.0;
    for (const Row& row : rows)
      if (!row.degenerate) r = std::max(r, std::abs(row_residual(row, u, prob.f[row.node], n)));
    return r;
  };

  long sweeps = 0;
  double res = residual();
  double target = target_for(u);
  const int every = std::max(1, opts.check_every);
  while (res > target && sweeps < opts.max_sweeps) {
    for (const Row& r : rows) {
      double next;
      if (r.degenerate) {
        double s = 0.0;
        for (int a = 0; a < 2 * n; ++a) s += u[r.nb[a]];
        next = s / (2 * n);
      } else {
        double s = -prob.f[r.node];
        for (int a = 0; a < n; ++a) s += r.w[a] * (u[r.nb[2 * a]] + u[r.nb[2 * a + 1]]);
        next = s / r.diag;
      }
      u[r.node] += omega * (next - u[r.node]);
    }
    ++sweeps;
    if (sweeps % every == 0) {
      res = residual();
      target = target_for(u);
    }
  }
  if (res > target) {
    std::ostringstream os;
    os << "solve_linear_dirichlet: residual " << res << " above " << target << " after " << sweeps << " sweeps";
    throw ConvergenceError(os.str(), res, sweeps);
  }
  SolveResult out{ScalarField(gp, std::move(u)), sweeps, res, degenerate};
  return out;
}

ScalarField linear_residual(const ScalarField& u, const std::vector<ScalarField>& a, const ScalarField& f) {
  const Grid& g = u.grid();
  const int n = g.dim();
  if (static_cast<int>(a.size()) != n) throw PreconditionError("linear_residual: need one coefficient per axis");
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  std::vector<double> r(g.size(), 0.0);
  for (std::size_t i : g.interior_nodes()) {
    double s = -f[i];
    for (int k = 0; k < n; ++k) {
      if (a[k][i] == 0.0) continue;
      const auto fwd = g.neighbor(i, k, 1);
      const auto bwd = g.neighbor(i, k, -1);
      if (!fwd || !bwd) throw PreconditionError("linear_residual: interior node lacks a stencil neighbour");
      s += a[k][i] * (u[*fwd] - 2.0 * u[i] + u[*bwd]) * inv_h2;
    }
    r[i] = s;
  }
  return ScalarField(u.grid_ptr(), std::move(r));
}

ComparisonReport comparison_check(const ScalarField& u, const ScalarField& v, const EllipticityPair& pair,
                                  const ScalarField& f, PucciOperator op) {
  if (u.grid_ptr() != v.grid_ptr() || u.grid_ptr() != f.grid_ptr())
    throw PreconditionError("comparison_check: fields on different grids");
  const Grid& g = u.grid();
  ComparisonReport rep;
  const double h = g.spacing();
  rep.tol = 10.0 * h * h * (1.0 + std::max(std::abs(f.max()), std::abs(f.min())));

  const PucciResidual sub = strong_residual(u, pair, f, Sense{op, Inequality::geq});
  const PucciResidual sup = strong_residual(v, pair, f, Sense{op, Inequality::leq});
  rep.subsolution = sub.satisfied;
  rep.supersolution = sup.satisfied;
  rep.sub_violation_measure = sub.violation_measure;
  rep.super_violation_measure = sup.violation_measure;
  rep.boundary_ordered = true;
  for (std::size_t i : g.boundary_nodes())
    if (u[i] > v[i] + rep.tol) rep.boundary_ordered = false;
  rep.hypotheses_hold = rep.subsolution && rep.supersolution && rep.boundary_ordered;

  rep.worst_gap = -kInfinity;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double gap = u[i] - v[i];
    if (gap > rep.worst_gap) {
      rep.worst_gap = gap;
      rep.worst_node = i;
    }
  }
  rep.conclusion_holds = rep.worst_gap <= rep.tol;
  if (!rep.hypotheses_hold)
    rep.verdict = "hypothesis_failure";
  else
    rep.verdict = rep.conclusion_holds ? "holds" : "conclusion_failure";
  return rep;
}

}  // namespace abplab
