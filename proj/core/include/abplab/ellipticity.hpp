#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "abplab/grid.hpp"

namespace abplab {

struct IntegrabilityExponents {
  double p = kInfinity;
  double q = kInfinity;
  /// 1/theta = 1/n - 1/p - 1/q; infinity when that is zero, NaN when negative.
  double theta = 0.0;
  /// 1/tau = 1/n - 1/p.
  double tau = 0.0;
  /// 1/n - 1/p - 1/q.
  double abp_slack = 0.0;
  /// True when 1/p + 1/q > 1/n.
  bool violates_abp = false;
};

IntegrabilityExponents derive_exponents(double p, double q, int n);

/// Supremum of the admissible exponents for 1/lambda (resp. Lambda) in L^p,
/// stored by its reciprocal so that power weights |x|^a keep inv = |a| exactly.
/// `open` means the supremum itself is excluded.
struct ExponentRange {
  double inv = 0.0;
  bool open = false;

  double sup() const { return inv == 0.0 ? kInfinity : 1.0 / inv; }
};

enum class AdmissibilityMode { abp, weak_harnack };
std::string to_string(AdmissibilityMode m);

/// lambda/Lambda profile from the closed-form catalog together with its
/// integrability data. Immutable.
class EllipticityPair {
 public:
  using Fn = std::function<double(const Point&)>;

  EllipticityPair(std::string id, std::vector<double> params, int dim, Fn lambda, Fn Lambda, ExponentRange p_range,
                  ExponentRange q_range, std::optional<double> p, std::optional<double> q, GridSpec domain);

  const std::string& id() const noexcept { return id_; }
  const std::vector<double>& params() const noexcept { return params_; }
  /// "grushin_alpha(0.25)" style descriptor (round-trips through parse_profile).
  std::string descriptor() const;
  int dim() const noexcept { return dim_; }

  double lambda(const Point& x) const { return lambda_(x); }
  double Lambda(const Point& x) const { return Lambda_(x); }

  const ExponentRange& p_range() const noexcept { return p_range_; }
  const ExponentRange& q_range() const noexcept { return q_range_; }
  /// Declared exponents; empty when no value >= 1 is admissible for the profile.
  std::optional<double> declared_p() const noexcept { return p_; }
  std::optional<double> declared_q() const noexcept { return q_; }

  /// Natural domain with spacing h (unit ball, or the half-space box of the
  /// fractional profile).
  GridSpec domain(double h) const;

 private:
  std::string id_;
  std::vector<double> params_;
  int dim_;
  Fn lambda_, Lambda_;
  ExponentRange p_range_, q_range_;
  std::optional<double> p_, q_;
  GridSpec domain_;
};

EllipticityPair constant_profile(double lambda0, double Lambda0, int dim = 2);
EllipticityPair abs_gamma_profile(double gamma);
EllipticityPair y_squared_profile();
EllipticityPair grushin_alpha_profile(double alpha);
/// Extension profile on [-1,1]^{n_x} x [0,1] in dimension n_x + 1.
EllipticityPair fractional_s_profile(double s, int n_x = 1);

/// Parses `<id>(<comma-separated params>)`; `dim` is used only by `constant`.
/// Throws CatalogError for unknown ids and PreconditionError for bad params.
EllipticityPair parse_profile(const std::string& text, int dim = 2);

struct AdmissibilityVerdict {
  AdmissibilityMode mode = AdmissibilityMode::abp;
  /// Whether some exponents in the profile's integrability range satisfy the
  /// condition.
  bool admissible = false;
  /// threshold - (1/p* + 1/q*) using the range suprema.
  double slack = 0.0;
  /// The same test applied to the declared (p, q) only.
  bool declared_admissible = false;
  double declared_slack = -kInfinity;
  /// Declared exponents are too small to witness an admissible profile.
  bool conservative = false;
};

AdmissibilityVerdict check_admissible(const EllipticityPair& pair, AdmissibilityMode mode);
/// Direct predicate on explicit exponents: 1/p + 1/q <= 1/n (abp) or < 1/(2n).
AdmissibilityVerdict check_admissible(double p, double q, int n, AdmissibilityMode mode);

struct SampledEllipticity {
  ScalarField lambda;
  ScalarField Lambda;
  /// 1/lambda, +infinity where lambda vanishes.
  ScalarField inv_lambda;
};

/// Throws PreconditionError on a dimension mismatch.
SampledEllipticity sample_ellipticity(const EllipticityPair& pair, const GridPtr& grid);

}  // namespace abplab
