#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "abplab/ellipticity.hpp"
#include "abplab/grid.hpp"
#include "abplab/pucci.hpp"
#include "abplab/sym_matrix.hpp"

namespace abplab {

/// Named closed-form function with its exact Hessian. The Hessian callable
/// returns nullopt where no classical second derivative exists (kinks, cusps).
struct ClosedForm {
  std::string id;
  std::vector<double> params;
  /// 0 means any dimension.
  int dim = 0;
  std::function<double(const Point&, int)> value;
  std::function<std::optional<SymMatrix>(const Point&, int)> hessian;

  std::string descriptor() const;
  double operator()(const Point& x, int n) const { return value(x, n); }
  ScalarField sample(const GridPtr& g) const;
};

/// Catalog ids: bump, neg_bump, two_minus_r2, y2cosx, abs, abs_minus_one, xy,
/// x2, cosh_x, sqrt_r, cos_x_cosh_y, fractional_solution(s[,n_x]),
/// quadratic(a11,a12,a22,b1,b2,c) for n = 2.
/// Throws CatalogError for unknown ids.
ClosedForm closed_form(const std::string& text);
std::vector<std::string> closed_form_ids();

/// Diagonal non-divergence operator sum_i a_i(x) D_ii.
struct DiagonalOperator {
  std::string id;
  std::vector<double> params;
  int dim = 2;
  std::vector<std::function<double(const Point&)>> a;

  std::string descriptor() const;
  std::vector<ScalarField> sample(const GridPtr& g) const;
};

/// Catalog: laplace(n), y2cosx (2, y^2), grushin(alpha) (1, |x|^alpha),
/// abs_gamma(gamma) (|x|^gamma), fractional(s[,n_x]) (1, .., z^((2s-1)/s)).
DiagonalOperator linear_operator(const std::string& text);

struct ManufacturedRhs {
  ScalarField f;
  /// Nodes where the exact Hessian exists; f is 0 elsewhere.
  Mask defined;
};

/// f = sum_i a_i d_ii u_exact with the exact Hessian.
ManufacturedRhs manufactured_rhs(const ClosedForm& u, const DiagonalOperator& op, const GridPtr& g);
/// f = M+/-(D^2 u_exact) with sampled lambda, Lambda.
ManufacturedRhs manufactured_rhs(const ClosedForm& u, const EllipticityPair& pair, PucciOperator op, const GridPtr& g);

}  // namespace abplab
