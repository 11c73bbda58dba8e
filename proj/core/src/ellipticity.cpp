#include "abplab/ellipticity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "abplab/error.hpp"
#include "abplab/format.hpp"

namespace abplab {

IntegrabilityExponents derive_exponents(double p, double q, int n) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw PreconditionError("derive_exponents: p and q must lie in [1, inf]");
  if (n < 1 || n > 3) throw PreconditionError("derive_exponents: n must be 1, 2 or 3");
  IntegrabilityExponents e;
  e.p = p;
  e.q = q;
  const double inv_theta = 1.0 / n - 1.0 / p - 1.0 / q;
  const double inv_tau = 1.0 / n - 1.0 / p;
  e.abp_slack = inv_theta;
  e.violates_abp = inv_theta < 0.0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  e.theta = inv_theta > 0.0 ? 1.0 / inv_theta : (inv_theta == 0.0 ? kInfinity : nan);
  e.tau = inv_tau > 0.0 ? 1.0 / inv_tau : (inv_tau == 0.0 ? kInfinity : nan);
  return e;
}

std::string to_string(AdmissibilityMode m) { return m == AdmissibilityMode::abp ? "abp" : "weak_harnack"; }

EllipticityPair::EllipticityPair(std::string id, std::vector<double> params, int dim, Fn lambda, Fn Lambda,
                                 ExponentRange p_range, ExponentRange q_range, std::optional<double> p,
                                 std::optional<double> q, GridSpec domain)
    : id_(std::move(id)),
      params_(std::move(params)),
      dim_(dim),
      lambda_(std::move(lambda)),
      Lambda_(std::move(Lambda)),
      p_range_(p_range),
      q_range_(q_range),
      p_(p),
      q_(q),
      domain_(domain) {}

std::string EllipticityPair::descriptor() const {
  if (params_.empty()) return id_;
  std::string s = id_ + "(";
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (i) s += ",";
    s += format_short(params_[i]);
  }
  return s + ")";
}

GridSpec EllipticityPair::domain(double h) const {
  GridSpec s = domain_;
  s.h = h;
  return s;
}

namespace {

// Declared exponent for a power-type range: 0.9 of the supremum, kept >= 1.
std::optional<double> declared_from(const ExponentRange& r) {
  if (!r.open) return r.sup();
  if (!(r.inv < 1.0)) return std::nullopt;
  return std::max(1.0, 0.9 * r.sup());
}

ExponentRange power_range(double exponent) {
  if (exponent == 0.0) return {0.0, false};
  return {std::abs(exponent), true};
}

}  // namespace

EllipticityPair constant_profile(double lambda0, double Lambda0, int dim) {
  if (dim < 1 || dim > 3) throw PreconditionError("constant: dim must be 1, 2 or 3");
  if (!(lambda0 > 0.0) || !(Lambda0 >= lambda0) || !std::isfinite(Lambda0))
    throw PreconditionError("constant: need 0 < lambda0 <= Lambda0 < inf");
  return EllipticityPair(
      "constant", {lambda0, Lambda0}, dim, [lambda0](const Point&) { return lambda0; },
      [Lambda0](const Point&) { return Lambda0; }, {0.0, false}, {0.0, false}, kInfinity, kInfinity,
      GridSpec::ball(dim, 1.0 / 16.0));
}

EllipticityPair abs_gamma_profile(double gamma) {
  if (!(gamma > 0.0)) throw PreconditionError("abs_gamma: gamma must be positive");
  const ExponentRange pr = power_range(gamma);
  return EllipticityPair(
      "abs_gamma", {gamma}, 1, [gamma](const Point& x) { return std::pow(std::abs(x[0]), gamma); },
      [](const Point&) { return 1.0; }, pr, {0.0, false}, declared_from(pr), kInfinity,
      GridSpec::ball(1, 1.0 / 16.0));
}

EllipticityPair y_squared_profile() {
  // 1/lambda = y^-2 is integrable near the x-axis only for p < 1/2.
  const ExponentRange pr{2.0, true};
  return EllipticityPair(
      "y_squared", {}, 2, [](const Point& x) { return x[1] * x[1]; }, [](const Point&) { return 2.0; }, pr,
      {0.0, false}, std::nullopt, kInfinity, GridSpec::ball(2, 1.0 / 16.0));
}

EllipticityPair grushin_alpha_profile(double alpha) {
  if (!(alpha >= 0.0) || !(alpha < 1.0)) throw PreconditionError("grushin_alpha: alpha must lie in [0, 1)");
  const ExponentRange pr = power_range(alpha);
  return EllipticityPair(
      "grushin_alpha", {alpha}, 2,
      [alpha](const Point& x) { return alpha == 0.0 ? 1.0 : std::pow(std::abs(x[0]), alpha); },
      [](const Point&) { return 1.0; }, pr, {0.0, false}, declared_from(pr), kInfinity,
      GridSpec::ball(2, 1.0 / 16.0));
}

EllipticityPair fractional_s_profile(double s, int n_x) {
  if (!(s > 0.0) || !(s < 1.0)) throw PreconditionError("fractional_s: s must lie in (0, 1)");
  if (n_x < 1 || n_x > 2) throw PreconditionError("fractional_s: n_x must be 1 or 2");
  const int dim = n_x + 1;
  const int zi = n_x;
  const double a = (2.0 * s - 1.0) / s;
  auto weight = [a, zi](const Point& x) { return a == 0.0 ? 1.0 : std::pow(x[zi], a); };
  ExponentRange pr{0.0, false}, qr{0.0, false};
  if (a > 0.0) pr = power_range(a);
  if (a < 0.0) qr = power_range(a);

  GridSpec box = GridSpec::box(dim, 1.0 / 16.0, -1.0, 1.0);
  box.lo[zi] = 0.0;
  return EllipticityPair(
      "fractional_s", {s, static_cast<double>(n_x)}, dim,
      [weight](const Point& x) { return std::min(1.0, weight(x)); },
      [weight](const Point& x) { return std::max(1.0, weight(x)); }, pr, qr, declared_from(pr), declared_from(qr),
      box);
}

EllipticityPair parse_profile(const std::string& text, int dim) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  std::string id = t;
  std::vector<double> params;
  const auto open = t.find('(');
  if (open != std::string::npos) {
    if (t.back() != ')') throw PreconditionError("profile '" + text + "': missing closing parenthesis");
    id = t.substr(0, open);
    const std::string body = t.substr(open + 1, t.size() - open - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      char* end = nullptr;
      const double v = std::strtod(item.c_str(), &end);
      if (item.empty() || *end != '\0') throw PreconditionError("profile '" + text + "': bad parameter '" + item + "'");
      params.push_back(v);
    }
  }
  auto want = [&](std::size_t lo, std::size_t hi) {
    if (params.size() < lo || params.size() > hi)
      throw PreconditionError("profile '" + text + "': wrong number of parameters");
  };
  if (id == "constant") {
    want(0, 2);
    if (params.empty()) return constant_profile(1.0, 1.0, dim);
    if (params.size() == 1) return constant_profile(params[0], params[0], dim);
    return constant_profile(params[0], params[1], dim);
  }
  if (id == "abs_gamma") {
    want(1, 1);
    return abs_gamma_profile(params[0]);
  }
  if (id == "y_squared") {
    want(0, 0);
    return y_squared_profile();
  }
  if (id == "grushin_alpha") {
    want(1, 1);
    return grushin_alpha_profile(params[0]);
  }
  if (id == "fractional_s") {
    want(1, 2);
    return fractional_s_profile(params[0], params.size() > 1 ? static_cast<int>(params[1]) : 1);
  }
  throw CatalogError("unknown ellipticity profile '" + id + "'");
}

namespace {

double threshold(int n, AdmissibilityMode mode) { return mode == AdmissibilityMode::abp ? 1.0 / n : 0.5 / n; }

bool passes(double s, bool attained, int n, AdmissibilityMode mode) {
  const double c = threshold(n, mode);
  if (mode == AdmissibilityMode::weak_harnack) return s < c;
  return s < c || (s == c && attained);
}

}  // namespace

AdmissibilityVerdict check_admissible(double p, double q, int n, AdmissibilityMode mode) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw PreconditionError("check_admissible: p and q must lie in [1, inf]");
  const double s = 1.0 / p + 1.0 / q;
  AdmissibilityVerdict v;
  v.mode = mode;
  v.slack = threshold(n, mode) - s;
  v.admissible = passes(s, true, n, mode);
  v.declared_slack = v.slack;
  v.declared_admissible = v.admissible;
  return v;
}

AdmissibilityVerdict check_admissible(const EllipticityPair& pair, AdmissibilityMode mode) {
  const int n = pair.dim();
  const auto& pr = pair.p_range();
  const auto& qr = pair.q_range();
  const double s = pr.inv + qr.inv;
  AdmissibilityVerdict v;
  v.mode = mode;
  v.slack = threshold(n, mode) - s;
  v.admissible = passes(s, !pr.open && !qr.open, n, mode);
  if (pair.declared_p() && pair.declared_q()) {
    const double sd = 1.0 / *pair.declared_p() + 1.0 / *pair.declared_q();
    v.declared_slack = threshold(n, mode) - sd;
    v.declared_admissible = passes(sd, true, n, mode);
  }
  v.conservative = v.admissible && !v.declared_admissible;
  return v;
}

SampledEllipticity sample_ellipticity(const EllipticityPair& pair, const GridPtr& grid) {
  if (grid->dim() != pair.dim())
    throw PreconditionError("sample_ellipticity: profile " + pair.descriptor() + " has dimension " +
                            std::to_string(pair.dim()) + ", grid has " + std::to_string(grid->dim()));
  const std::size_t n = grid->size();
  std::vector<double> lo(n), hi(n), inv(n);
  bool ext_lo = false, ext_hi = false, ext_inv = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Point x = grid->position(i);
    lo[i] = pair.lambda(x);
    hi[i] = pair.Lambda(x);
    inv[i] = lo[i] > 0.0 ? 1.0 / lo[i] : kInfinity;
    ext_lo = ext_lo || !std::isfinite(lo[i]);
    ext_hi = ext_hi || !std::isfinite(hi[i]);
    ext_inv = ext_inv || !std::isfinite(inv[i]);
  }
  return SampledEllipticity{ScalarField(grid, std::move(lo), ext_lo), ScalarField(grid, std::move(hi), ext_hi),
                            ScalarField(grid, std::move(inv), ext_inv)};
}

}  // namespace abplab
