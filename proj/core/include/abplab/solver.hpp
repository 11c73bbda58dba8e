#pragma once

#include <optional>
#include <string>
#include <vector>

#include "abplab/ellipticity.hpp"
#include "abplab/grid.hpp"
#include "abplab/pucci.hpp"

namespace abplab {

/// Dirichlet problem sum_i a_i(x) D_ii u = f in the interior, u = g on the
/// boundary nodes.
struct LinearProblem {
  GridPtr grid;
  /// One nonnegative coefficient field per axis.
  std::vector<ScalarField> a;
  ScalarField f;
  /// Boundary data; interior entries are ignored.
  ScalarField g;
};

struct SolverOptions {
  double tol = 1e-10;
  long max_sweeps = 1'000'000;
  /// Over-relaxation factor; default 2 / (1 + sin(pi h / diam)).
  std::optional<double> omega;
  int check_every = 10;
};

struct SolveResult {
  ScalarField u;
  long sweeps = 0;
  /// max |sum a_i d_ii u - f| over nondegenerate interior nodes.
  double residual = 0.0;
  std::size_t degenerate_nodes = 0;
};

/// Successive over-relaxation in lexicographic node order. Throws
/// PreconditionError for a negative coefficient or a degenerate node (all
/// a_i = 0) with f != 0, and ConvergenceError when the residual stays above
/// tol * (1 + |f|_inf) after max_sweeps. The threshold never drops below the
/// stencil rounding floor 16 eps max_i(2 sum_a a_i / h^2) |u|_inf.
SolveResult solve_linear_dirichlet(const LinearProblem& prob, const SolverOptions& opts = {});

/// sum_i a_i d_ii u - f on interior nodes, zero on the boundary.
ScalarField linear_residual(const ScalarField& u, const std::vector<ScalarField>& a, const ScalarField& f);

struct ComparisonReport {
  bool subsolution = false;
  bool supersolution = false;
  bool boundary_ordered = false;
  bool hypotheses_hold = false;
  bool conclusion_holds = false;
  /// max (u - v) over all nodes.
  double worst_gap = 0.0;
  std::size_t worst_node = 0;
  double tol = 0.0;
  double sub_violation_measure = 0.0;
  double super_violation_measure = 0.0;
  /// "holds", "hypothesis_failure" or "conclusion_failure".
  std::string verdict;
};

/// u a subsolution (M(D^2 u) >= f) and v a supersolution (M(D^2 v) <= f) of the
/// same Pucci problem with u <= v + tol on the boundary should give u <= v + tol
/// everywhere, tol = 10 h^2 (1 + |f|_inf). Hypothesis and conclusion failures
/// are reported separately.
ComparisonReport comparison_check(const ScalarField& u, const ScalarField& v, const EllipticityPair& pair,
                                  const ScalarField& f, PucciOperator op = PucciOperator::plus);

}  // namespace abplab
