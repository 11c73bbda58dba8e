#pragma once

#include <vector>

#include "abplab/grid.hpp"
#include "abplab/sym_matrix.hpp"

namespace abplab {

/// eta(x) = (1 - |x|^2)^beta on the closed unit ball (zero outside).
class CutoffSpec {
 public:
  /// Throws PreconditionError for beta < 2 or n outside {1,2,3}.
  CutoffSpec(double beta, int n);

  double beta() const noexcept { return beta_; }
  int dim() const noexcept { return n_; }

  double eta(const Point& x) const;
  /// D eta = -2 beta x (1 - |x|^2)^(beta - 1).
  Point gradient(const Point& x) const;
  /// D_ij eta = -2 beta delta_ij s^(beta-1) + 4 beta (beta-1) x_i x_j s^(beta-2), s = 1 - |x|^2.
  SymMatrix hessian(const Point& x) const;
  /// Eigenvalue along x (multiplicity 1).
  double radial_eigenvalue(const Point& x) const;
  /// Eigenvalue orthogonal to x (multiplicity n - 1).
  double tangential_eigenvalue(const Point& x) const;
  /// Closed-form spectrum, sorted ascending.
  Spectrum eigenvalues(const Point& x) const;

  /// |x| beyond which the radial eigenvalue is nonnegative: (2 beta - 1)^(-1/2).
  double sign_flip_radius() const;
  /// 1 + 1/(2 alpha^2): radial eigenvalue >= 0 on alpha <= |x| <= 1 from here on.
  static double threshold_beta(double alpha);

 private:
  double beta_;
  int n_;
};

struct CutoffFields {
  ScalarField eta;
  std::vector<ScalarField> gradient;
  HessianField hessian;
  ScalarField radial;
  ScalarField tangential;
};

/// Samples eta and its closed-form derivatives on every node of `grid`.
CutoffFields cutoff_eta(double beta, const GridPtr& grid);

struct CauchySchwarzResult {
  bool holds = true;
  /// Direction a with the most negative slack.
  Point worst_direction{};
  /// min over tested a of eta^-1 <a,c>^2 + eta <a,b>^2 - 2 |<a,b><a,c>|.
  double worst_slack = kInfinity;
  int directions = 0;
};

/// Checks +-(b (x) c + c (x) b) <= eta^-1 c (x) c + eta b (x) b as quadratic
/// forms on the coordinate axes, b, c, b +- c and `random_directions` seeded
/// unit vectors. Slack below -1e-12 (relative) counts as failure.
CauchySchwarzResult matrix_cauchy_schwarz_check(const Point& b, const Point& c, double eta, int n,
                                                int random_directions = 64, unsigned seed = 0);

}  // namespace abplab
