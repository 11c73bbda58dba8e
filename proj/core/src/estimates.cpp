#include "abplab/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "abplab/contact.hpp"
#include "abplab/error.hpp"
#include "abplab/format.hpp"
#include "abplab/pucci.hpp"

namespace abplab {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds_with_constant:
      return "holds_with_constant";
    case Verdict::vacuous:
      return "vacuous";
    case Verdict::violated:
      return "violated";
    case Verdict::hypothesis_failure:
      return "hypothesis_failure";
  }
  return "unknown";
}

void EstimateReport::add_note(const std::string& s) {
  if (!notes.empty()) notes += "; ";
  notes += s;
}

void classify(EstimateReport& r) {
  if (!(r.lhs > 0.0)) {
    r.verdict = Verdict::vacuous;
    r.empirical_constant = 0.0;
  } else if (r.rhs_core == 0.0) {
    r.verdict = Verdict::violated;
    r.empirical_constant = kInfinity;
  } else {
    r.verdict = Verdict::holds_with_constant;
    r.empirical_constant = r.lhs / r.rhs_core;
  }
}

Mask half_ball_mask(const Grid& g) { return ball_mask(g, Point{0.0, 0.0, 0.0}, 0.5 + 0.5 * g.spacing(), true); }

SingularNorm singular_weighted_norm(const ScalarField& g, const ScalarField& weight, double p, const Mask& mask) {
  const Grid& grid = g.grid();
  if (mask.size() != grid.size()) throw PreconditionError("singular_weighted_norm: mask size mismatch");
  Mask kept = mask;
  SingularNorm out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!mask[i]) continue;
    const double a = g[i];
    const double w = weight[i];
    if (a == 0.0 || w == 0.0) continue;
    if (std::isfinite(a) && std::isfinite(w)) continue;
    kept[i] = false;
    ++out.excluded;
  }
  out.excluded_measure = static_cast<double>(out.excluded) * grid.cell_volume();
  const double allowance = 4.0 * grid.spacing() * grid.surface_area();
  if (out.excluded_measure > allowance) {
    std::ostringstream os;
    os << "singular integrand on " << out.excluded << " nodes (measure " << out.excluded_measure
       << ") exceeds the null-set allowance " << allowance;
    throw HypothesisFailure(os.str());
  }
  out.value = weighted_lp_norm(g, weight, p, kept);
  return out;
}

double lp_quasi_norm(const ScalarField& g, double p, const Mask& mask) {
  if (!(p > 0.0)) throw PreconditionError("lp_quasi_norm: exponent must be positive");
  if (p >= 1.0) return lp_norm(g, p, mask);
  const Grid& grid = g.grid();
  double peak = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (mask[i]) peak = std::max(peak, std::abs(g[i]));
  if (peak == 0.0) return 0.0;
  if (!std::isfinite(peak)) return kInfinity;
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (mask[i]) s += std::pow(std::abs(g[i]) / peak, p);
  return peak * std::pow(s * grid.cell_volume(), 1.0 / p);
}

namespace {

EstimateReport start_report(const std::string& id, const Grid& g, const EllipticityPair& pair) {
  EstimateReport r;
  r.theorem_id = id;
  r.h = g.spacing();
  r.profile = pair.id();
  r.params = pair.descriptor();
  return r;
}

// Runs the strong-residual hypothesis check and records it. Returns false on failure.
bool hypothesis(EstimateReport& r, const ScalarField& u, const EllipticityPair& pair, const ScalarField& f,
                Sense sense) {
  const PucciResidual res = strong_residual(u, pair, f, sense);
  std::ostringstream os;
  os << "hypothesis " << sense.name() << (res.satisfied ? " satisfied" : " fails") << " (violating fraction "
     << format_short(res.violation_measure) << ")";
  r.add_note(os.str());
  return res.satisfied;
}

ScalarField abs_field(const ScalarField& f) {
  return f.map([](double x) { return std::abs(x); });
}

EstimateReport abp_common(const std::string& id, const ScalarField& w, const ScalarField& source,
                          const ScalarField& u, const ScalarField& f, const EllipticityPair& pair, Sense sense,
                          const AbpOptions& opts) {
  const GridPtr& gp = w.grid_ptr();
  const Grid& g = *gp;
  EstimateReport r = start_report(id, g, pair);
  const Mask bmask = boundary_mask(g);
  const double boundary_sup = std::max(0.0, w.max_over(bmask));
  r.lhs = w.max() - boundary_sup;
  r.metrics.emplace_back("boundary_sup", boundary_sup);
  r.add_note("boundary sup over the lattice boundary layer of width h");

  const bool ok = hypothesis(r, u, pair, f, sense);
  try {
    const SampledEllipticity ell = sample_ellipticity(pair, gp);
    const ContactMask contact = upper_contact_set(w, opts.contact_tol);
    const SingularNorm sn = singular_weighted_norm(source, ell.inv_lambda, g.dim(), contact.member);
    r.rhs_core = sn.value;
    r.metrics.emplace_back("contact_nodes", static_cast<double>(contact.count()));
    r.metrics.emplace_back("contact_measure", static_cast<double>(contact.count()) * g.cell_volume());
    if (sn.excluded) {
      r.metrics.emplace_back("excluded_degenerate_nodes", static_cast<double>(sn.excluded));
      r.add_note("dropped lambda = 0 nodes as a null set");
    }
  } catch (const HypothesisFailure& e) {
    r.add_note(e.what());
    classify(r);
    r.verdict = Verdict::hypothesis_failure;
    return r;
  }
  classify(r);
  if (!ok) r.verdict = Verdict::hypothesis_failure;
  return r;
}

}  // namespace

EstimateReport abp_report(const ScalarField& u, const EllipticityPair& pair, const ScalarField& f,
                          const AbpOptions& opts) {
  return abp_common("abp", u.positive_part(), f.negative_part(), u, f, pair, plus_geq, opts);
}

EstimateReport abp_min_report(const ScalarField& u, const EllipticityPair& pair, const ScalarField& f,
                              const AbpOptions& opts) {
  EstimateReport r = abp_common("abp_min", u.negative_part(), f.positive_part(), u, f, pair, minus_leq, opts);
  r.add_note("contact set of u^- taken over the whole domain");
  return r;
}

EstimateReport local_boundedness_report(const ScalarField& u, const EllipticityPair& pair, const ScalarField& f,
                                        double t) {
  const GridPtr& gp = u.grid_ptr();
  const Grid& g = *gp;
  const int n = g.dim();
  if (!(t > 0.0) || t > n) throw PreconditionError("local_boundedness_report: t must lie in (0, n]");
  EstimateReport r = start_report("local_boundedness", g, pair);
  r.metrics.emplace_back("t", t);
  r.lhs = u.max_over(half_ball_mask(g));
  const bool ok = hypothesis(r, u, pair, f, plus_geq);
  const Mask inside = interior_mask(g);
  try {
    const SampledEllipticity ell = sample_ellipticity(pair, gp);
    std::vector<double> ratio(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) ratio[i] = ell.Lambda[i] * ell.inv_lambda[i];
    const ScalarField weight(gp, std::move(ratio), true);
    const ScalarField up = u.positive_part();
    const ScalarField powered = up.map([t, n](double x) { return std::pow(x, t / n); });
    const double first = std::pow(singular_weighted_norm(powered, weight, n, inside).value, n / t);
    const double second = singular_weighted_norm(f.negative_part(), ell.inv_lambda, n, inside).value;
    r.rhs_core = first + second;

    const auto p = pair.declared_p();
    const auto q = pair.declared_q();
    if (p && q) {
      const IntegrabilityExponents ex = derive_exponents(*p, *q, n);
      if (!ex.violates_abp) {
        const ScalarField ones = ScalarField::constant(gp, 1.0);
        const double inv_l = singular_weighted_norm(ones, ell.inv_lambda, *p, inside).value;
        const double big_l = singular_weighted_norm(ones, ell.Lambda, *q, inside).value;
        const double s = ex.theta * t / n;
        const double unorm = std::isinf(s) ? up.max_over(inside) : lp_quasi_norm(up, s, inside);
        r.metrics.emplace_back("theta", ex.theta);
        r.metrics.emplace_back("secondary_rhs", std::pow(inv_l, n / t) * std::pow(big_l, n / t) * unorm + second);
      } else {
        r.add_note("secondary form skipped: declared exponents violate 1/p + 1/q <= 1/n");
      }
    }
  } catch (const HypothesisFailure& e) {
    r.add_note(e.what());
    classify(r);
    r.verdict = Verdict::hypothesis_failure;
    return r;
  }
  classify(r);
  if (!ok) r.verdict = Verdict::hypothesis_failure;
  return r;
}

double default_epsilon(const ScalarField& u) { return 1e-6 * (1.0 + u.max()); }

Cube default_cube(int n) { return Cube{Point{0.0, 0.0, 0.0}, 1.0 / (3.0 * n)}; }

namespace {

double source_norm(const ScalarField& f, const SampledEllipticity& ell) {
  const Grid& g = f.grid();
  return singular_weighted_norm(abs_field(f), ell.inv_lambda, g.dim(), interior_mask(g)).value;
}

void check_nonnegative(const ScalarField& u, const Mask* mask) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (mask && !(*mask)[i]) continue;
    if (u[i] < -1e-12) {
      std::ostringstream os;
      os << "u must be nonnegative; u = " << u[i] << " at node " << i;
      throw HypothesisFailure(os.str());
    }
  }
}

}  // namespace

KappaFit kappa_fit(const ScalarField& u, const EllipticityPair& pair, const ScalarField& f, const KappaOptions& opts) {
  const GridPtr& gp = u.grid_ptr();
  const Grid& g = *gp;
  KappaFit fit;
  fit.cube = opts.cube ? *opts.cube : default_cube(g.dim());
  const Mask cube = cube_mask(g, fit.cube);
  check_nonnegative(u, &cube);
  fit.epsilon = opts.epsilon ? *opts.epsilon : default_epsilon(u);
  if (!(fit.epsilon > 0.0)) throw PreconditionError("kappa_fit: epsilon must be positive");
  const SampledEllipticity ell = sample_ellipticity(pair, gp);
  const ScalarField ubar = u.plus(fit.epsilon + source_norm(f, ell));
  fit.inf_ubar = ubar.min_over(cube);
  const double sup = ubar.max_over(cube);

  fit.thresholds = opts.thresholds;
  if (fit.thresholds.empty()) {
    if (sup == fit.inf_ubar) {
      fit.degenerate = true;
      fit.thresholds = {fit.inf_ubar};
      fit.measures = {0.0};
      return fit;
    }
    for (int k = 1; k <= 12; ++k) fit.thresholds.push_back(fit.inf_ubar + (sup - fit.inf_ubar) * 0.5 * k / 12.0);
  }
  for (std::size_t k = 1; k < fit.thresholds.size(); ++k)
    if (!(fit.thresholds[k] > fit.thresholds[k - 1])) throw PreconditionError("kappa_fit: thresholds must increase");

  std::vector<double> xs, ys;
  for (double t : fit.thresholds) {
    if (!(t > 0.0)) throw PreconditionError("kappa_fit: thresholds must be positive");
    const double mu = distribution_function(ubar, fit.cube, t).measure;
    fit.measures.push_back(mu);
    if (mu > 0.0) {
      xs.push_back(std::log(fit.inf_ubar / t));
      ys.push_back(std::log(mu));
    }
  }
  if (xs.empty()) throw PreconditionError("kappa_fit: every mu_t vanishes (thresholds above sup ubar)");
  const bool flat_mu = std::all_of(ys.begin(), ys.end(), [&](double y) { return y == ys.front(); });
  if (xs.size() < 3 || flat_mu) {
    fit.degenerate = true;
    fit.kappa = 0.0;
    fit.prefactor = std::exp(ys.front());
    return fit;
  }
  const double m = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k] / m;
    my += ys[k] / m;
  }
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  if (sxx == 0.0) {
    fit.degenerate = true;
    return fit;
  }
  fit.kappa = sxy / sxx;
  const double intercept = my - fit.kappa * mx;
  fit.prefactor = std::exp(intercept);
  double ss = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double e = ys[k] - (intercept + fit.kappa * xs[k]);
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / m);
  return fit;
}

KappaSweep kappa_epsilon_sweep(const ScalarField& u, const EllipticityPair& pair, const ScalarField& f,
                               std::vector<double> scales) {
  KappaSweep sw;
  const double base = 1.0 + u.max();
  for (double s : scales) {
    KappaOptions o;
    o.epsilon = s * base;
    sw.fits.push_back(kappa_fit(u, pair, f, o));
  }
  if (sw.fits.size() >= 2) {
    const KappaFit& a = sw.fits.front();
    const KappaFit& b = sw.fits.back();
    sw.prefactor_diverges = !a.degenerate && !b.degenerate && b.kappa > 0.0 && b.prefactor > 10.0 * a.prefactor;
  }
  return sw;
}

WeakHarnackResult weak_harnack_report(const std::vector<ScalarField>& us, const std::vector<ScalarField>& fs,
                                      const EllipticityPair& pair, const WeakHarnackOptions& opts) {
  if (us.empty() || us.size() != fs.size()) throw PreconditionError("weak_harnack_report: need matching u and f lists");
  if (opts.t_values.empty()) throw PreconditionError("weak_harnack_report: empty t list");
  for (double t : opts.t_values)
    if (!(t > 0.0)) throw PreconditionError("weak_harnack_report: t must be positive");

  WeakHarnackResult out;
  HarnackDiagnostics& d = out.diagnostics;
  d.t_values = opts.t_values;
  const ScalarField& u = us.back();
  const ScalarField& f = fs.back();
  const Grid& g = u.grid();
  EstimateReport& r = out.report;
  r = start_report("weak_harnack", g, pair);

  double inf_half = 0.0, shift = 0.0;
  try {
    for (std::size_t k = 0; k < us.size(); ++k) {
      check_nonnegative(us[k], nullptr);
      const Grid& gk = us[k].grid();
      const Mask half = half_ball_mask(gk);
      const SampledEllipticity ell = sample_ellipticity(pair, us[k].grid_ptr());
      const double inf_k = us[k].min_over(half);
      const double shift_k = source_norm(fs[k], ell);
      std::vector<double> row;
      for (double t : opts.t_values) {
        const double num = lp_quasi_norm(us[k], t, half);
        const double den = inf_k + shift_k;
        row.push_back(den > 0.0 ? num / den : (num > 0.0 ? kInfinity : 0.0));
      }
      d.quotients.push_back(row);
      if (k + 1 == us.size()) {
        inf_half = inf_k;
        shift = shift_k;
      }
    }
  } catch (const HypothesisFailure& e) {
    r.add_note(e.what());
    r.verdict = Verdict::hypothesis_failure;
    return out;
  }

  for (std::size_t j = 0; j < opts.t_values.size(); ++j) {
    bool stable = true;
    for (const auto& row : d.quotients) stable = stable && row[j] <= opts.cap;
    if (stable && (!d.stable_t || opts.t_values[j] > *d.stable_t)) d.stable_t = opts.t_values[j];
  }
  const double t_report = d.stable_t ? *d.stable_t : *std::min_element(opts.t_values.begin(), opts.t_values.end());
  r.lhs = lp_quasi_norm(u, t_report, half_ball_mask(g));
  r.rhs_core = inf_half + shift;
  r.metrics.emplace_back("t", t_report);
  r.metrics.emplace_back("inf_half_ball", inf_half);
  r.metrics.emplace_back("source_norm", shift);
  if (!d.stable_t) r.add_note("no t keeps the quotient below the cap");
  for (std::size_t j = 0; j < opts.t_values.size(); ++j)
    r.metrics.emplace_back("quotient_t=" + format_short(opts.t_values[j]), d.quotients.back()[j]);

  d.epsilon = opts.kappa.epsilon ? *opts.kappa.epsilon : default_epsilon(u);
  const SampledEllipticity ell = sample_ellipticity(pair, u.grid_ptr());
  const ScalarField ubar = u.plus(d.epsilon + shift);
  d.ubar = ubar;
  d.w = ubar.map([](double x) { return -std::log(x); });
  if (opts.fit_kappa) {
    try {
      d.kappa = kappa_fit(u, pair, f, opts.kappa);
      r.metrics.emplace_back("kappa", d.kappa->kappa);
      r.metrics.emplace_back("kappa_residual", d.kappa->residual);
    } catch (const Error& e) {
      r.add_note(std::string("kappa fit skipped: ") + e.what());
    }
  }
  const bool ok = hypothesis(r, u, pair, f, minus_leq);
  classify(r);
  if (!ok) r.verdict = Verdict::hypothesis_failure;
  return out;
}

WeakHarnackResult weak_harnack_report(const ScalarField& u, const EllipticityPair& pair, const ScalarField& f,
                                      const WeakHarnackOptions& opts) {
  return weak_harnack_report(std::vector<ScalarField>{u}, std::vector<ScalarField>{f}, pair, opts);
}

EstimateReport harnack_report(const ScalarField& u, const EllipticityPair& pair, const ScalarField& f) {
  const GridPtr& gp = u.grid_ptr();
  const Grid& g = *gp;
  EstimateReport r = start_report("harnack", g, pair);
  try {
    check_nonnegative(u, nullptr);
    const Mask half = half_ball_mask(g);
    const SampledEllipticity ell = sample_ellipticity(pair, gp);
    const double inf_half = u.min_over(half);
    const double shift = source_norm(f, ell);
    r.lhs = u.max_over(half);
    r.rhs_core = inf_half + shift;
    r.metrics.emplace_back("inf_half_ball", inf_half);
    r.metrics.emplace_back("source_norm", shift);
  } catch (const HypothesisFailure& e) {
    r.add_note(e.what());
    r.verdict = Verdict::hypothesis_failure;
    return r;
  }
  const ScalarField af = abs_field(f);
  const bool ok_sub = hypothesis(r, u, pair, af.scaled(-1.0), plus_geq);
  const bool ok_sup = hypothesis(r, u, pair, af, minus_leq);
  classify(r);
  if (!ok_sub || !ok_sup) r.verdict = Verdict::hypothesis_failure;
  return r;
}

HolderFit holder_fit(const ScalarField& u, const Point& center, const std::vector<double>& radii) {
  if (radii.size() < 3) throw PreconditionError("holder_fit: need at least 3 radii");
  const Grid& g = u.grid();
  const int n = g.dim();
  HolderFit fit;
  fit.radii = radii;
  std::sort(fit.radii.begin(), fit.radii.end());
  for (double r : fit.radii)
    if (!(r > 0.0) || r > 0.5 + 1e-12) throw PreconditionError("holder_fit: radii must lie in (0, 1/2]");

  for (double r : fit.radii) {
    const Mask m = ball_mask(g, center, r, false);
    if (mask_count(m) == 0) throw PreconditionError("holder_fit: radius below the grid resolution");
    fit.oscillation.push_back(u.max_over(m) - u.min_over(m));
  }
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < fit.radii.size(); ++k)
    if (fit.oscillation[k] > 0.0) {
      xs.push_back(std::log(fit.radii[k]));
      ys.push_back(std::log(fit.oscillation[k]));
    }
  if (xs.size() < 2) {
    fit.flat = true;
    return fit;
  }
  const double m = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k] / m;
    my += ys[k] / m;
  }
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  fit.raw_slope = sxy / sxx;
  fit.alpha = std::min(1.0, fit.raw_slope);
  fit.capped = fit.raw_slope > 1.0;
  if (!(fit.alpha > 0.0)) {
    fit.flat = true;
    fit.alpha = 0.0;
    return fit;
  }

  const Mask half = ball_mask(g, center, 0.5, false);
  std::vector<std::size_t> nodes;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (half[i]) nodes.push_back(i);
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    const Point xa = g.position(nodes[a]);
    for (std::size_t b = a + 1; b < nodes.size(); ++b) {
      const Point xb = g.position(nodes[b]);
      Point d{};
      for (int k = 0; k < n; ++k) d[k] = xa[k] - xb[k];
      const double q = std::abs(u[nodes[a]] - u[nodes[b]]) / std::pow(norm(d, n), fit.alpha);
      fit.seminorm = std::max(fit.seminorm, q);
    }
  }
  return fit;
}

}  // namespace abplab
