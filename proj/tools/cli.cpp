#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "abplab/closed_form.hpp"
#include "abplab/contact.hpp"
#include "abplab/cutoff.hpp"
#include "abplab/error.hpp"
#include "abplab/estimates.hpp"
#include "abplab/field_io.hpp"
#include "abplab/format.hpp"
#include "abplab/gallery.hpp"
#include "abplab/pucci.hpp"
#include "abplab/report_csv.hpp"
#include "abplab/solver.hpp"

namespace abplab::cli {

namespace {

class ConfigError : public Error {
 public:
  using Error::Error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_number(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || *end != '\0' || !std::isfinite(v))
    throw ConfigError("'" + key + "': cannot parse '" + text + "' as a number");
  return v;
}

}  // namespace

double parse_h(const std::string& text) {
  const std::string t = trim(text);
  const auto slash = t.find('/');
  double v = 0.0;
  if (slash == std::string::npos) {
    v = parse_number("h", t);
  } else {
    const double num = parse_number("h", t.substr(0, slash));
    const double den = parse_number("h", t.substr(slash + 1));
    if (den == 0.0) throw ConfigError("'h': zero denominator in '" + text + "'");
    v = num / den;
  }
  if (!(v > 0.0)) throw ConfigError("'h': spacing must be positive, got '" + text + "'");
  return v;
}

std::vector<double> parse_h_list(const std::string& text) {
  std::vector<double> hs;
  for (const auto& item : split(text, ',')) {
    if (item.empty()) throw ConfigError("'h-list': empty entry in '" + text + "'");
    hs.push_back(parse_h(item));
  }
  if (hs.empty()) throw ConfigError("'h-list': no spacings given");
  for (std::size_t k = 1; k < hs.size(); ++k)
    if (!(hs[k] < hs[k - 1])) throw ConfigError("'h-list' must be strictly decreasing: '" + text + "'");
  return hs;
}

namespace {

// INI values are split on commas; glue the pieces back together.
std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) out += (out.empty() ? "" : ",") + item;
  return out;
}

// "beta=2", "4", "8" -> "beta=2,4,8"; a piece containing '=' starts a new sweep.
std::vector<std::string> swept_parameters(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    if (item.find('=') != std::string::npos || out.empty())
      out.push_back(item);
    else
      out.back() += "," + item;
  }
  return out;
}

struct Options {
  std::string bundle;
  std::vector<std::string> param_items;
  std::optional<double> alpha, gamma, s, n_x;
  std::string h;
  std::vector<std::string> h_list;
  std::string out;
  bool snapshots = false;

  std::string profile;
  std::string u = "bump";
  std::string f = "zero";
  std::string g;
  std::string op = "laplace(2)";
  std::optional<int> dim;
  std::string shape;
  std::vector<std::string> checks;
  double t = 1.0;
  std::vector<double> radii{0.0625, 0.125, 0.25, 0.5};
  std::optional<double> r;
  std::optional<double> tol;
  double solver_tol = 1e-12;
  std::vector<std::string> sweep;
  std::string check;
};

std::map<std::string, double> bundle_params(const Options& o) {
  std::map<std::string, double> p;
  for (const auto& item : o.param_items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("'param': expected key=value, got '" + item + "'");
    const std::string key = trim(item.substr(0, eq));
    p[key] = parse_number("param " + key, item.substr(eq + 1));
  }
  if (o.alpha) p["alpha"] = *o.alpha;
  if (o.gamma) p["gamma"] = *o.gamma;
  if (o.s) p["s"] = *o.s;
  if (o.n_x) p["n_x"] = *o.n_x;
  return p;
}

std::vector<double> spacings(const Options& o, std::optional<double> fallback) {
  if (!o.h.empty() && !o.h_list.empty()) throw ConfigError("'h' and 'h-list' are mutually exclusive");
  if (!o.h_list.empty()) return parse_h_list(join(o.h_list));
  if (!o.h.empty()) return {parse_h(o.h)};
  if (fallback) return {*fallback};
  throw ConfigError("'h': no grid spacing given");
}

GridSpec grid_spec(const Options& o, int default_dim, double h, std::optional<GridSpec> natural = std::nullopt) {
  if (o.shape.empty() && !o.dim && natural) {
    GridSpec s = *natural;
    s.h = h;
    return s;
  }
  const int n = o.dim.value_or(default_dim);
  if (o.shape.empty() || o.shape == "ball") return GridSpec::ball(n, h);
  if (o.shape == "box") return GridSpec::box(n, h);
  throw ConfigError("'shape': expected ball or box, got '" + o.shape + "'");
}

/// Sink for CSV output: a file under --out or the given stream.
class Output {
 public:
  Output(const Options& o, const std::string& name, std::ostream& fallback) : stream_(&fallback) {
    if (o.out.empty()) return;
    std::filesystem::create_directories(o.out);
    path_ = (std::filesystem::path(o.out) / name).string();
    file_.open(path_);
    if (!file_) throw ConfigError("'out': cannot write " + path_);
    stream_ = &file_;
  }
  std::ostream& os() { return *stream_; }

 private:
  std::ostream* stream_;
  std::ofstream file_;
  std::string path_;
};

void snapshot(const Options& o, const std::string& name, const ScalarField& u) {
  if (!o.snapshots) return;
  if (o.out.empty()) throw ConfigError("'snapshots' requires 'out'");
  std::filesystem::create_directories(o.out);
  write_field_file((std::filesystem::path(o.out) / name).string(), u);
}

std::string h_tag(std::size_t k) { return "h" + std::to_string(k); }

// --- check -----------------------------------------------------------------

int severity(const std::vector<ReportRow>& rows) {
  int code = 0;
  for (const auto& r : rows) {
    if (r.verdict == "error") return 1;
    if (r.verdict == "hypothesis_failure") code = 2;
  }
  return code;
}

int check_gallery(const Options& o, std::ostream& out) {
  const ProblemBundle b = gallery(o.bundle, bundle_params(o));
  const std::vector<double> hs = spacings(o, b.grid.h);
  std::vector<ReportRow> rows;
  bool matched = true, errored = false, hypothesis = false;
  for (std::size_t k = 0; k < hs.size(); ++k) {
    const BundleResult r = run_bundle(b, hs[k]);
    for (const auto& c : r.checks) {
      errored = errored || c.actual == "error";
      if (!c.matched && c.actual == "hypothesis_failure") hypothesis = true;
    }
    matched = matched && r.all_matched;
    const auto part = r.rows();
    rows.insert(rows.end(), part.begin(), part.end());
    if (o.snapshots) {
      GridSpec spec = b.grid;
      spec.h = hs[k];
      snapshot(o, "u_" + h_tag(k) + ".field", b.u.sample(Grid::build(spec)));
    }
  }
  Output sink(o, "check.csv", out);
  write_estimates_csv(sink.os(), rows, "check");
  if (errored) return 1;
  if (matched) return 0;
  return hypothesis ? 2 : 1;
}

ReportRow residual_row(const ScalarField& u, const EllipticityPair& pair, const ScalarField& f) {
  const PucciResidual sub = strong_residual(u, pair, f, plus_geq);
  const PucciResidual sup = strong_residual(u, pair, f, minus_leq);
  ReportRow row;
  row.theorem_id = "strong_residual";
  row.h = u.grid().spacing();
  row.profile = pair.id();
  row.params = pair.descriptor();
  row.lhs = std::max(-sub.worst, -sup.worst);
  row.rhs_core = std::max(sub.max_tolerance, sup.max_tolerance);
  row.empirical_constant = row.rhs_core > 0.0 ? row.lhs / row.rhs_core : 0.0;
  row.verdict = sub.satisfied && sup.satisfied ? "satisfied" : "violated";
  row.notes = "lhs = worst violation, rhs_core = largest node tolerance; plus-geq violating fraction " +
              format_short(sub.violation_measure) + "; minus-leq violating fraction " +
              format_short(sup.violation_measure);
  return row;
}

ReportRow holder_row(const ScalarField& u, const EllipticityPair& pair, const std::vector<double>& radii) {
  const HolderFit fit = holder_fit(u, Point{0.0, 0.0, 0.0}, radii);
  ReportRow row;
  row.theorem_id = "holder";
  row.h = u.grid().spacing();
  row.profile = pair.id();
  row.params = pair.descriptor();
  row.lhs = fit.seminorm;
  row.rhs_core = fit.alpha;
  row.empirical_constant = fit.raw_slope;
  row.verdict = fit.flat ? "flat" : (fit.capped ? "capped" : "fitted");
  row.notes = "lhs = Holder seminorm on the half ball, rhs_core = fitted exponent, constant = raw slope";
  return row;
}

ScalarField free_rhs(const Options& o, const ClosedForm& u, const EllipticityPair& pair, const GridPtr& g) {
  if (o.f == "zero") return ScalarField::constant(g, 0.0);
  if (o.f == "pucci_plus") return manufactured_rhs(u, pair, PucciOperator::plus, g).f;
  if (o.f == "pucci_minus") return manufactured_rhs(u, pair, PucciOperator::minus, g).f;
  return closed_form(o.f).sample(g);
}

int check_free(const Options& o, std::ostream& out) {
  if (o.profile.empty()) throw ConfigError("'profile': required unless 'bundle' is given");
  const EllipticityPair pair = parse_profile(o.profile, o.dim.value_or(2));
  const ClosedForm u_cf = closed_form(o.u);
  std::vector<std::string> checks = o.checks;
  if (checks.empty()) checks = {"abp", "strong_residual"};
  const std::vector<double> hs = spacings(o, std::nullopt);

  std::vector<ReportRow> rows;
  for (std::size_t k = 0; k < hs.size(); ++k) {
    const GridPtr g = Grid::build(grid_spec(o, pair.dim(), hs[k], pair.domain(hs[k])));
    const ScalarField u = u_cf.sample(g);
    const ScalarField f = free_rhs(o, u_cf, pair, g);
    snapshot(o, "u_" + h_tag(k) + ".field", u);
    for (const auto& id : checks) {
      try {
        if (id == "abp")
          rows.push_back(to_row(abp_report(u, pair, f, AbpOptions{o.tol})));
        else if (id == "abp_min")
          rows.push_back(to_row(abp_min_report(u, pair, f, AbpOptions{o.tol})));
        else if (id == "local_boundedness")
          rows.push_back(to_row(local_boundedness_report(u, pair, f, o.t)));
        else if (id == "weak_harnack")
          rows.push_back(to_row(weak_harnack_report(u, pair, f).report));
        else if (id == "harnack")
          rows.push_back(to_row(harnack_report(u, pair, f)));
        else if (id == "strong_residual")
          rows.push_back(residual_row(u, pair, f));
        else if (id == "holder")
          rows.push_back(holder_row(u, pair, o.radii));
        else
          throw ConfigError("'checks': unknown check '" + id + "'");
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& e) {
        ReportRow row;
        row.theorem_id = id;
        row.h = hs[k];
        row.profile = pair.id();
        row.params = pair.descriptor();
        row.verdict = "error";
        row.notes = e.what();
        rows.push_back(row);
      }
    }
  }
  Output sink(o, "check.csv", out);
  write_estimates_csv(sink.os(), rows, "check");
  return severity(rows);
}

int cmd_check(const Options& o, std::ostream& out) { return o.bundle.empty() ? check_free(o, out) : check_gallery(o, out); }

// --- convergence -----------------------------------------------------------

struct SolveRun {
  SolveResult result;
  std::optional<double> error;
};

SolveRun solve_manufactured(const Options& o, const DiagonalOperator& op, const GridPtr& g) {
  const ClosedForm truth = closed_form(o.u);
  const ScalarField exact = truth.sample(g);
  const ManufacturedRhs m = manufactured_rhs(truth, op, g);
  for (std::size_t i : g->interior_nodes())
    if (!m.defined[i]) throw PreconditionError("manufactured rhs undefined at an interior node");
  SolverOptions so;
  so.tol = o.solver_tol;
  SolveRun run{solve_linear_dirichlet(LinearProblem{g, op.sample(g), m.f, exact}, so), std::nullopt};
  double err = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i) err = std::max(err, std::abs(run.result.u[i] - exact[i]));
  run.error = err;
  return run;
}

int cmd_convergence(const Options& o, std::ostream& out) {
  if (o.h_list.empty()) throw ConfigError("'h-list': convergence needs at least two spacings");
  const std::vector<double> hs = parse_h_list(join(o.h_list));
  if (hs.size() < 2) throw ConfigError("'h-list': convergence needs at least two spacings");
  const DiagonalOperator op = linear_operator(o.op);

  std::vector<double> errors, scales;
  std::vector<SolveResult> runs;
  for (std::size_t k = 0; k < hs.size(); ++k) {
    const GridPtr g = Grid::build(grid_spec(o, op.dim, hs[k]));
    SolveRun run = solve_manufactured(o, op, g);
    errors.push_back(*run.error);
    const ScalarField exact = closed_form(o.u).sample(g);
    scales.push_back(1.0 + std::max(std::abs(exact.max()), std::abs(exact.min())));
    snapshot(o, "solution_" + h_tag(k) + ".field", run.result.u);
    runs.push_back(std::move(run.result));
  }
  bool exact = true;
  for (std::size_t k = 0; k < hs.size(); ++k) exact = exact && errors[k] <= 1e-9 * scales[k];

  Output sink(o, "convergence.csv", out);
  std::ostream& os = sink.os();
  write_csv_header(os, "convergence", "operator,solution,h,error_linf,ratio,order,sweeps,residual");
  for (std::size_t k = 0; k < hs.size(); ++k) {
    std::string ratio = "", order = "";
    if (exact) {
      order = "exact";
    } else if (k > 0) {
      ratio = format_g17(errors[k - 1] / errors[k]);
      order = format_g17(std::log(errors[k - 1] / errors[k]) / std::log(hs[k - 1] / hs[k]));
    }
    os << csv_escape(op.descriptor()) << ',' << csv_escape(o.u) << ',' << format_g17(hs[k]) << ','
       << format_g17(errors[k]) << ',' << ratio << ',' << order << ',' << runs[k].sweeps << ','
       << format_g17(runs[k].residual) << '\n';
  }
  return 0;
}

// --- sweep -----------------------------------------------------------------

std::pair<std::string, std::vector<double>> sweep_spec(const Options& o) {
  if (o.sweep.empty()) throw ConfigError("'sweep': no swept parameter");
  if (swept_parameters(o.sweep).size() > 1) throw ConfigError("'sweep': exactly one swept parameter allowed");
  const std::string s = swept_parameters(o.sweep).front();
  const auto eq = s.find('=');
  if (eq == std::string::npos) throw ConfigError("'sweep': expected name=v1,v2,..., got '" + s + "'");
  const std::string name = trim(s.substr(0, eq));
  static const std::vector<std::string> known{"alpha", "gamma", "s", "beta", "t"};
  if (std::find(known.begin(), known.end(), name) == known.end())
    throw ConfigError("'sweep': unknown parameter '" + name + "'");
  std::vector<double> values;
  for (const auto& item : split(s.substr(eq + 1), ','))
    if (!item.empty()) values.push_back(parse_number("sweep " + name, item));
  if (values.empty()) throw ConfigError("'sweep': empty value list for '" + name + "'");
  return {name, values};
}

ReportRow cutoff_row(double beta, int n, double h) {
  ReportRow row;
  row.theorem_id = "cutoff_sign_flip";
  row.h = h;
  row.profile = "cutoff";
  row.params = "beta=" + format_short(beta) + " n=" + std::to_string(n);
  const CutoffSpec spec(beta, n);
  const GridPtr g = Grid::build(GridSpec::ball(n, h));
  const CutoffFields c = cutoff_eta(beta, g);
  double measured = kInfinity;
  for (std::size_t i : g->interior_nodes())
    if (c.radial[i] >= 0.0) measured = std::min(measured, norm(g->position(i), n));
  const double formula = spec.sign_flip_radius();
  const double alpha = 1.0 / (3.0 * n);
  row.lhs = measured;
  row.rhs_core = formula;
  row.empirical_constant = measured / formula;
  row.verdict = std::abs(measured - formula) <= h ? "matches" : "mismatch";
  std::ostringstream os;
  os << "lhs = smallest node radius with nonnegative radial eigenvalue, rhs_core = (2 beta - 1)^(-1/2); alpha="
     << format_short(alpha) << "; threshold_beta=" << format_g17(CutoffSpec::threshold_beta(alpha))
     << "; rule_satisfied=" << (beta >= CutoffSpec::threshold_beta(alpha) ? "yes" : "no")
     << "; flip_within_alpha=" << (formula <= alpha ? "yes" : "no");
  row.notes = os.str();
  return row;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const auto [name, values] = sweep_spec(o);
  std::vector<std::pair<double, ReportRow>> rows;

  auto failure_row = [](const std::string& id, double h, const std::string& what) {
    ReportRow r;
    r.theorem_id = id;
    r.h = h;
    r.verdict = "error";
    r.notes = what;
    return r;
  };

  if (name == "beta") {
    const int n = o.dim.value_or(2);
    const double h = spacings(o, 1.0 / 64.0).back();
    for (double v : values) {
      try {
        rows.emplace_back(v, cutoff_row(v, n, h));
      } catch (const Error& e) {
        rows.emplace_back(v, failure_row("cutoff_sign_flip", h, e.what()));
      }
    }
  } else {
    if (o.bundle.empty()) throw ConfigError("'bundle': required for sweeps over " + name);
    for (double v : values) {
      std::map<std::string, double> params = bundle_params(o);
      if (name != "t") params[name] = v;
      try {
        const ProblemBundle b = gallery(o.bundle, params);
        const double h = spacings(o, b.grid.h).back();
        GridSpec spec = b.grid;
        spec.h = h;
        const GridPtr g = Grid::build(spec);
        if (name == "t") {
          const ScalarField u = b.u.sample(g);
          const ScalarField f = ScalarField::sample(g, b.f);
          const std::string id = o.check.empty() ? "local_boundedness" : o.check;
          if (id == "local_boundedness") {
            rows.emplace_back(v, to_row(local_boundedness_report(u, b.pair, f, v)));
          } else if (id == "weak_harnack") {
            WeakHarnackOptions wo;
            wo.t_values = {v};
            wo.fit_kappa = false;
            rows.emplace_back(v, to_row(weak_harnack_report(u, b.pair, f, wo).report));
          } else {
            throw ConfigError("'check': t sweeps support local_boundedness or weak_harnack");
          }
        } else {
          std::vector<std::string> ids;
          if (!o.check.empty())
            ids = {o.check};
          else
            for (const auto& e : b.expected) ids.push_back(e.check_id);
          std::sort(ids.begin(), ids.end());
          for (const auto& id : ids) rows.emplace_back(v, run_check(b, g, id).row);
        }
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& e) {
        rows.emplace_back(v, failure_row(o.check.empty() ? "bundle" : o.check, 0.0, e.what()));
      }
    }
  }

  Output sink(o, "sweep.csv", out);
  std::ostream& os = sink.os();
  write_csv_header(os, "sweep", std::string("param,value,") + kEstimateColumns + ",trend");
  std::map<std::string, double> previous;
  for (const auto& [v, row] : rows) {
    std::string trend;
    const auto it = previous.find(row.theorem_id);
    if (it != previous.end() && std::isfinite(it->second) && std::isfinite(row.empirical_constant)) {
      const double d = row.empirical_constant - it->second;
      trend = d > 0.0 ? "up" : (d < 0.0 ? "down" : "flat");
    }
    previous[row.theorem_id] = row.empirical_constant;
    os << name << ',' << format_g17(v) << ',';
    std::ostringstream line;
    write_row(line, row);
    std::string text = line.str();
    text.pop_back();
    os << text << ',' << trend << '\n';
  }
  std::vector<ReportRow> plain;
  for (const auto& pr : rows) plain.push_back(pr.second);
  return severity(plain) == 2 ? 0 : severity(plain);
}

// --- envelope / solve ------------------------------------------------------

int cmd_envelope(const Options& o, std::ostream& out) {
  const ClosedForm u_cf = closed_form(o.u);
  const double h = spacings(o, std::nullopt).back();
  const GridPtr g = Grid::build(grid_spec(o, u_cf.dim ? u_cf.dim : 2, h));
  const ScalarField u = u_cf.sample(g);
  const ContactMask m = o.r ? slope_restricted_contact(u, *o.r, o.tol) : upper_contact_set(u, o.tol);
  if (!o.out.empty()) {
    std::filesystem::create_directories(o.out);
    write_field_file((std::filesystem::path(o.out) / "envelope.field").string(), concave_envelope(u));
    std::ofstream mf(std::filesystem::path(o.out) / "contact.mask");
    if (!mf) throw ConfigError("'out': cannot write contact.mask");
    write_mask(mf, *g, m.member);
  }
  std::ostream& os = out;
  write_csv_header(os, "envelope", "solution,h,nodes,interior,members,radius,tol");
  os << csv_escape(u_cf.descriptor()) << ',' << format_g17(h) << ',' << g->size() << ','
     << g->interior_nodes().size() << ',' << m.count() << ',' << (o.r ? format_g17(*o.r) : "inf") << ','
     << format_g17(m.tol) << '\n';
  return 0;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const DiagonalOperator op = linear_operator(o.op);
  const double h = spacings(o, std::nullopt).back();
  const GridPtr g = Grid::build(grid_spec(o, op.dim, h));
  auto compute = [&]() -> SolveRun {
    if (o.f == "zero" && o.g.empty()) return solve_manufactured(o, op, g);
    const ScalarField f = o.f == "zero" ? ScalarField::constant(g, 0.0) : closed_form(o.f).sample(g);
    const ScalarField bd = o.g.empty() ? ScalarField::constant(g, 0.0) : closed_form(o.g).sample(g);
    SolverOptions so;
    so.tol = o.solver_tol;
    return SolveRun{solve_linear_dirichlet(LinearProblem{g, op.sample(g), f, bd}, so), std::nullopt};
  };
  const SolveRun run = compute();
  const SolveResult& res = run.result;
  const std::optional<double>& err = run.error;
  if (!o.out.empty()) {
    std::filesystem::create_directories(o.out);
    write_field_file((std::filesystem::path(o.out) / "solution.field").string(), res.u);
  }
  write_csv_header(out, "solve", "operator,h,sweeps,residual,error_linf,degenerate_nodes");
  out << csv_escape(op.descriptor()) << ',' << format_g17(h) << ',' << res.sweeps << ',' << format_g17(res.residual)
      << ',' << (err ? format_g17(*err) : "nan") << ',' << res.degenerate_nodes << '\n';
  return 0;
}

void shared_options(CLI::App* c, Options& o) {
  c->add_option("--h", o.h, "grid spacing, e.g. 1/64");
  c->add_option("--h-list", o.h_list, "strictly decreasing spacings, e.g. 1/16,1/32")->take_all();
  c->add_option("--out", o.out, "output directory (CSV goes to stdout when absent)");
  c->add_option("--dim", o.dim, "dimension");
  c->add_option("--shape", o.shape, "ball or box");
}

void bundle_options(CLI::App* c, Options& o) {
  c->add_option("--bundle", o.bundle, "gallery bundle name");
  c->add_option("--param", o.param_items, "bundle parameter key=value")->take_all();
  c->add_option("--alpha", o.alpha);
  c->add_option("--gamma", o.gamma);
  c->add_option("--s", o.s);
  c->add_option("--n_x", o.n_x);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"abplab: degenerate Pucci estimates laboratory", "abplab"};
  app.set_config("--config", "", "flat INI file; [check], [sweep], ... sections set subcommand options");
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  Options o;

  auto* check = app.add_subcommand("check", "run estimate checks on a gallery bundle or a free problem");
  shared_options(check, o);
  bundle_options(check, o);
  check->add_option("--profile", o.profile, "ellipticity profile, e.g. grushin_alpha(0.25)");
  check->add_option("--u", o.u, "closed-form solution id");
  check->add_option("--f", o.f, "right-hand side: closed-form id, zero, pucci_plus or pucci_minus");
  check->add_option("--checks", o.checks, "abp,abp_min,local_boundedness,weak_harnack,harnack,strong_residual,holder")
      ->delimiter(',');
  check->add_option("--t", o.t, "exponent for local_boundedness");
  check->add_option("--radii", o.radii, "radii for holder")->delimiter(',');
  check->add_option("--tol", o.tol, "contact tolerance override");
  check->add_flag("--snapshots", o.snapshots, "write field snapshots into --out");

  auto* conv = app.add_subcommand("convergence", "observed orders of the linear solver on a manufactured solution");
  shared_options(conv, o);
  conv->add_option("--op", o.op, "linear operator, e.g. grushin(0)");
  conv->add_option("--u", o.u, "closed-form truth");
  conv->add_option("--solver-tol", o.solver_tol);
  conv->add_flag("--snapshots", o.snapshots);

  auto* sweep = app.add_subcommand("sweep", "one-parameter sweep over alpha, gamma, s, beta or t");
  shared_options(sweep, o);
  bundle_options(sweep, o);
  sweep->add_option("--sweep", o.sweep, "name=v1,v2,...")->take_all();
  sweep->add_option("--check", o.check, "restrict to one check id");

  auto* env = app.add_subcommand("envelope", "contact set and concave envelope of a closed form");
  shared_options(env, o);
  env->add_option("--u", o.u, "closed-form id");
  env->add_option("--r", o.r, "slope bound for the restricted contact set");
  env->add_option("--tol", o.tol, "contact tolerance override");

  auto* solve = app.add_subcommand("solve", "solve a linear Dirichlet problem");
  shared_options(solve, o);
  solve->add_option("--op", o.op, "linear operator");
  solve->add_option("--u", o.u, "closed-form truth (manufactured mode)");
  solve->add_option("--f", o.f, "closed-form right-hand side");
  solve->add_option("--g", o.g, "closed-form boundary data");
  solve->add_option("--solver-tol", o.solver_tol);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (check->parsed()) return cmd_check(o, out);
    if (conv->parsed()) return cmd_convergence(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (env->parsed()) return cmd_envelope(o, out);
    if (solve->parsed()) return cmd_solve(o, out);
  } catch (const HypothesisFailure& e) {
    err << "hypothesis failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace abplab::cli
