#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abplab/ellipticity.hpp"
#include "abplab/grid.hpp"

namespace abplab {

enum class Verdict { holds_with_constant, vacuous, violated, hypothesis_failure };
std::string to_string(Verdict v);

/// Outcome of one theorem check. The theorems fix no numeric constant, so a
/// finite lhs/rhs_core is never a violation; "violated" means lhs > 0 = rhs_core.
struct EstimateReport {
  std::string theorem_id;
  double h = 0.0;
  std::string profile;
  std::string params;
  double lhs = 0.0;
  double rhs_core = 0.0;
  double empirical_constant = 0.0;
  Verdict verdict = Verdict::vacuous;
  std::string notes;
  /// Secondary quantities (key, value) appended to notes on serialisation.
  std::vector<std::pair<std::string, double>> metrics;

  void add_note(const std::string& s);
};

/// Fills constant and verdict from lhs and rhs_core.
void classify(EstimateReport& r);

/// Nodes of the closed half ball |x - center| <= 1/2 + h/2 (interior nodes).
Mask half_ball_mask(const Grid& g);

/// Weighted L^p norm where nodes with a non-finite weight and nonzero
/// integrand are dropped as a null-set sampling artefact, provided their
/// total cell volume stays within 4 h |boundary|. A larger singular set
/// throws HypothesisFailure.
struct SingularNorm {
  double value = 0.0;
  std::size_t excluded = 0;
  double excluded_measure = 0.0;
};
SingularNorm singular_weighted_norm(const ScalarField& g, const ScalarField& weight, double p, const Mask& mask);

/// (sum |g|^p h^n)^(1/p) for any p > 0 (a quasi-norm below 1).
double lp_quasi_norm(const ScalarField& g, double p, const Mask& mask);

struct AbpOptions {
  std::optional<double> contact_tol;
};

/// lhs = sup u - sup_boundary u+, rhs_core = |f^- / lambda|_{L^n(Gamma+(u+))}.
EstimateReport abp_report(const ScalarField& u, const EllipticityPair& pair, const ScalarField& f,
                          const AbpOptions& opts = {});
/// lhs = sup u^- - sup_boundary u^-, rhs_core = |f^+ / lambda|_{L^n(Gamma+(u^-))}.
EstimateReport abp_min_report(const ScalarField& u, const EllipticityPair& pair, const ScalarField& f,
                              const AbpOptions& opts = {});

/// lhs = sup_{B_1/2} u; rhs_core = |(u+)^{t/n} Lambda/lambda|_{L^n}^{n/t} + |f^-/lambda|_{L^n}.
/// Metric "secondary_rhs" holds |1/lambda|_p^{n/t} |Lambda|_q^{n/t} |u+|_{theta t/n} + |f^-/lambda|_n.
EstimateReport local_boundedness_report(const ScalarField& u, const EllipticityPair& pair, const ScalarField& f,
                                        double t);

struct KappaFit {
  double epsilon = 0.0;
  double inf_ubar = 0.0;
  double kappa = 0.0;
  /// Prefactor C in mu_t ~ C (inf ubar / t)^kappa.
  double prefactor = 0.0;
  /// RMS residual of the fit in log mu.
  double residual = 0.0;
  bool degenerate = false;
  std::vector<double> thresholds;
  std::vector<double> measures;
  Cube cube;
};

struct KappaOptions {
  std::optional<double> epsilon;
  std::optional<Cube> cube;
  /// Increasing thresholds; default 12 levels over the lower half of the
  /// ubar range on the cube.
  std::vector<double> thresholds;
};

/// Default epsilon 1e-6 (1 + sup u).
double default_epsilon(const ScalarField& u);
/// K_{1/(3n)}(0).
Cube default_cube(int n);

/// ubar = u + eps + |f/lambda|_{L^n(B_1)} and the fit of log mu_t against
/// log(inf ubar / t) on the cube. Throws HypothesisFailure if u < -1e-12 on
/// the cube and PreconditionError if every mu_t vanishes.
KappaFit kappa_fit(const ScalarField& u, const EllipticityPair& pair, const ScalarField& f,
                   const KappaOptions& opts = {});

struct KappaSweep {
  std::vector<KappaFit> fits;
  /// Prefactor grows by more than 10x over the sweep while kappa stays positive.
  bool prefactor_diverges = false;
};

/// Runs kappa_fit for eps in scales * (1 + sup u); default scales 1e-3, 1e-6, 1e-9.
KappaSweep kappa_epsilon_sweep(const ScalarField& u, const EllipticityPair& pair, const ScalarField& f,
                               std::vector<double> scales = {1e-3, 1e-6, 1e-9});

struct HarnackDiagnostics {
  double epsilon = 0.0;
  std::optional<ScalarField> ubar;
  std::optional<ScalarField> w;
  std::optional<KappaFit> kappa;
  std::vector<double> t_values;
  /// quotients[k][j]: grid k, t_values[j].
  std::vector<std::vector<double>> quotients;
  std::optional<double> stable_t;
};

struct WeakHarnackOptions {
  std::vector<double> t_values{0.25, 0.5, 1.0, 2.0};
  double cap = 100.0;
  bool fit_kappa = true;
  KappaOptions kappa;
};

struct WeakHarnackResult {
  EstimateReport report;
  HarnackDiagnostics diagnostics;
};

/// Quotient |u|_{L^t(B_1/2)} / (inf_{B_1/2} u + |f/lambda|_{L^n(B_1)}) for every t
/// on each grid of a refinement sequence (coarse to fine). The reported t is
/// the largest whose quotient stays below the cap on every grid; the report
/// itself is evaluated on the finest grid. Throws HypothesisFailure if u < -1e-12.
WeakHarnackResult weak_harnack_report(const std::vector<ScalarField>& u, const std::vector<ScalarField>& f,
                                      const EllipticityPair& pair, const WeakHarnackOptions& opts = {});
WeakHarnackResult weak_harnack_report(const ScalarField& u, const EllipticityPair& pair, const ScalarField& f,
                                      const WeakHarnackOptions& opts = {});

/// lhs = sup_{B_1/2} u, rhs_core = inf_{B_1/2} u + |f/lambda|_{L^n(B_1)}.
EstimateReport harnack_report(const ScalarField& u, const EllipticityPair& pair, const ScalarField& f);

struct HolderFit {
  bool flat = false;
  /// Least-squares slope of log osc against log r, capped at 1.
  double alpha = 0.0;
  double raw_slope = 0.0;
  bool capped = false;
  /// max |u(x) - u(y)| / |x - y|^alpha over the closed half ball.
  double seminorm = 0.0;
  std::vector<double> radii;
  std::vector<double> oscillation;
};

/// Throws PreconditionError for fewer than 3 radii or radii outside (0, 1/2].
HolderFit holder_fit(const ScalarField& u, const Point& center, const std::vector<double>& radii);

}  // namespace abplab
