#pragma once

#include <string>

#include "abplab/ellipticity.hpp"
#include "abplab/grid.hpp"
#include "abplab/sym_matrix.hpp"

namespace abplab {

/// M+ = Lambda * sum_{e >= 0} e + lambda * sum_{e < 0} e. Zero eigenvalues sit
/// in the nonnegative group. An infinite coefficient multiplying a zero group
/// sum contributes nothing; multiplying a nonzero one throws PreconditionError.
double pucci_plus(const Spectrum& e, double lambda, double Lambda);
/// M- = lambda * sum_{e >= 0} e + Lambda * sum_{e < 0} e.
double pucci_minus(const Spectrum& e, double lambda, double Lambda);
double pucci_plus(const SymMatrix& m, double lambda, double Lambda);
double pucci_minus(const SymMatrix& m, double lambda, double Lambda);

enum class PucciOperator { plus, minus };
enum class Inequality { geq, leq };

/// Which differential inequality a strong residual tests, e.g. M+(D^2 u) >= f.
struct Sense {
  PucciOperator op = PucciOperator::plus;
  Inequality ineq = Inequality::geq;

  std::string name() const;
};

inline constexpr Sense plus_geq{PucciOperator::plus, Inequality::geq};
inline constexpr Sense plus_leq{PucciOperator::plus, Inequality::leq};
inline constexpr Sense minus_geq{PucciOperator::minus, Inequality::geq};
inline constexpr Sense minus_leq{PucciOperator::minus, Inequality::leq};

double pucci_apply(PucciOperator op, const Spectrum& e, double lambda, double Lambda);

/// Pointwise M+ / M- of a Hessian field on interior nodes (boundary nodes
/// carry 0). Nodes with non-finite lambda or Lambda follow the scalar rule.
ScalarField pucci_plus(const SampledEllipticity& ell, const HessianField& H);
ScalarField pucci_minus(const SampledEllipticity& ell, const HessianField& H);
ScalarField pucci_plus(const EllipticityPair& pair, const HessianField& H);
ScalarField pucci_minus(const EllipticityPair& pair, const HessianField& H);

struct PucciResidual {
  GridPtr grid;
  Sense sense;
  /// M(D^2 u) - f for geq, f - M(D^2 u) for leq; >= 0 means satisfied.
  /// Zero on nodes that were not evaluated.
  ScalarField residual;
  /// Interior nodes with finite lambda and Lambda.
  Mask evaluated;
  /// Evaluated nodes with residual < -tolerance(node).
  Mask violating;
  /// Fraction of interior nodes that violate.
  double violation_measure = 0.0;
  double violating_volume = 0.0;
  /// 4 h |boundary of domain|.
  double allowed_volume = 0.0;
  /// Largest per-node tolerance 10 h^2 (1 + |f| + Lambda |D^2 u|).
  double max_tolerance = 0.0;
  /// Most negative residual (0 if none negative).
  double worst = 0.0;
  /// max |residual| over evaluated nodes.
  double max_abs = 0.0;
  bool satisfied = false;
};

/// Discrete strong-solution check of M(D^2 u) (>= or <=) f a.e.
PucciResidual strong_residual(const ScalarField& u, const EllipticityPair& pair, const ScalarField& f, Sense sense);

}  // namespace abplab
