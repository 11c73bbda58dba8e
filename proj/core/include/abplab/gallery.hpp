#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abplab/closed_form.hpp"
#include "abplab/ellipticity.hpp"
#include "abplab/grid.hpp"
#include "abplab/report_csv.hpp"

namespace abplab {

struct ExpectedCheck {
  std::string check_id;
  std::string verdict;
};

/// A counterexample or application packaged with the verdicts it should produce.
///
/// Check ids and the verdict strings they yield:
///   strong_residual           satisfied | violated  (M+ >= f and M- <= f)
///   manufactured_rhs          satisfied | violated  (declared f vs the linear operator on u)
///   admissible_abp            admissible | not_admissible
///   admissible_weak_harnack   admissible | not_admissible
///   abp, abp_min, weak_harnack, harnack   estimate verdicts
///   hessian_growth            diverges | bounded  (max |D^2 u| on h and h/2)
struct ProblemBundle {
  std::string name;
  std::map<std::string, double> params;
  GridSpec grid;
  EllipticityPair pair;
  ClosedForm u;
  std::function<double(const Point&)> f;
  /// Linear operator with u as an exact solution of L u = f.
  DiagonalOperator op;
  std::vector<ExpectedCheck> expected;
  std::string notes;

  std::string params_text() const;
};

/// Catalog: y2cosx; abs_gamma (gamma > 0, default 1); grushin (0 < alpha < 1,
/// default 0.25); fractional (0 < s < 1, default 0.55; n_x in {1, 2}).
/// "monge_ampere" is listed but not buildable. Throws CatalogError for
/// unknown names, PreconditionError for unknown or out-of-range params.
ProblemBundle gallery(const std::string& name, const std::map<std::string, double>& params = {});
std::vector<std::string> gallery_names();

struct CheckOutcome {
  std::string check_id;
  std::string expected;
  std::string actual;
  bool matched = false;
  /// Set when the check threw; actual is then "error".
  std::string error;
  ReportRow row;
};

struct BundleResult {
  std::string bundle;
  double h = 0.0;
  std::vector<CheckOutcome> checks;
  bool all_matched = false;

  std::vector<std::string> mismatches() const;
  std::vector<ReportRow> rows() const;
};

/// Runs every expected check on the bundle grid (or at spacing h). Errors are
/// recorded per check; results are ordered by check id.
BundleResult run_bundle(const ProblemBundle& bundle, std::optional<double> h = std::nullopt);

/// Run a single check by id (used by run_bundle and the CLI).
CheckOutcome run_check(const ProblemBundle& bundle, const GridPtr& grid, const std::string& check_id);

}  // namespace abplab
