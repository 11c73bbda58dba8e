// One PASS/FAIL line per acceptance criterion; exit status counts failures.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "abplab/closed_form.hpp"
#include "abplab/contact.hpp"
#include "abplab/cutoff.hpp"
#include "abplab/ellipticity.hpp"
#include "abplab/estimates.hpp"
#include "abplab/gallery.hpp"
#include "abplab/pucci.hpp"
#include "abplab/solver.hpp"
#include "cli.hpp"
#include "oracles.hpp"

using namespace abplab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

SymMatrix random_sym(std::mt19937_64& rng, int n, double scale) {
  std::uniform_real_distribution<double> d(-scale, scale);
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, d(rng));
  return m;
}

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)}); }

// --- 1 ---------------------------------------------------------------------
Outcome pucci_algebra() {
  Outcome o;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> c(0.05, 5.0);
  std::size_t checked = 0;
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k < 1000; ++k) {
      const double lam = c(rng), Lam = lam + c(rng), t = c(rng);
      const SymMatrix M = random_sym(rng, n, 2.0), N = random_sym(rng, n, 2.0);
      const double scale = Lam * (1.0 + M.frobenius() + N.frobenius());
      const double tol = 1e-12 * scale;
      const double pM = pucci_plus(M, lam, Lam), mM = pucci_minus(M, lam, Lam);
      const double pN = pucci_plus(N, lam, Lam), mN = pucci_minus(N, lam, Lam);
      const double pMN = pucci_plus(M + N, lam, Lam);
      o.require(mM <= pM + tol, "M- <= M+");
      o.require(std::abs(mM + pucci_plus(-M, lam, Lam)) <= tol, "M-(X) = -M+(-X)");
      o.require(std::abs(pucci_plus(t * M, lam, Lam) - t * pM) <= tol * (1 + t), "homogeneity of M+");
      o.require(std::abs(pucci_minus(t * M, lam, Lam) - t * mM) <= tol * (1 + t), "homogeneity of M-");
      o.require(pM + mN <= pMN + tol, "M+(M) + M-(N) <= M+(M+N)");
      o.require(pMN <= pM + pN + tol, "M+(M+N) <= M+(M) + M+(N)");
      o.require(std::abs(pucci_plus(M, lam, lam) - lam * M.trace()) <= tol, "trace reduction M+");
      o.require(std::abs(pucci_minus(M, lam, lam) - lam * M.trace()) <= tol, "trace reduction M-");
      checked += 8;
    }
  o.detail = o.pass ? std::to_string(checked) + " identities on 3000 instances" : o.detail;
  return o;
}

// --- 2 ---------------------------------------------------------------------
Outcome eigen_oracle() {
  Outcome o;
  std::mt19937_64 rng(202);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const SymMatrix m = random_sym(rng, 3, 1.0);
    const Spectrum s = sym_eigenvalues(m);
    const auto c = oracle::cardano_eigenvalues(m);
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(s.values[i] - static_cast<double>(c[i])));
    o.require(std::abs(s.sum() - m.trace()) <= 1e-10, "trace identity");
    o.require(std::abs(s.product() - m.determinant()) <= 1e-10, "determinant identity");
  }
  o.require(worst <= 1e-10, "Cardano mismatch " + std::to_string(worst));
  if (o.pass) {
    std::ostringstream os;
    os << "10000 matrices, max deviation from Cardano " << worst;
    o.detail = os.str();
  }
  return o;
}

// --- 3 ---------------------------------------------------------------------
std::size_t mask_diff(const Mask& a, const Mask& b) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

ScalarField random_data(const GridPtr& g, std::mt19937_64& rng, int flavour) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  const int n = g->dim();
  std::vector<double> v(g->size());
  for (std::size_t i = 0; i < g->size(); ++i) {
    const Point x = g->position(i);
    const double noise = d(rng);
    v[i] = flavour == 0 ? noise : -dot(x, x, n) + 0.02 * noise;
  }
  return ScalarField(g, v);
}

Outcome contact_oracle() {
  Outcome o;
  std::mt19937_64 rng(303);
  const double tol = 1e-9;
  std::uniform_int_distribution<int> cells(4, 199);
  std::uniform_real_distribution<double> radius(0.5, 20.0);
  std::size_t nodes = 0;
  for (int k = 0; k < 50; ++k) {
    const int m = cells(rng);
    const auto g = Grid::build(GridSpec::box(1, 2.0 / m));
    const ScalarField u = random_data(g, rng, k % 2);
    const double r = radius(rng);
    o.require(mask_diff(upper_contact_set(u, tol).member, oracle::lp_contact_1d(u, tol)) == 0, "1D Gamma+");
    o.require(mask_diff(slope_restricted_contact(u, r, tol).member, oracle::lp_contact_1d(u, tol, r)) == 0,
              "1D Gamma+_r");
    nodes += g->size();
  }
  const int sides[] = {8, 16, 32};
  for (int k = 0; k < 20; ++k) {
    const auto g = Grid::build(GridSpec::box(2, 2.0 / sides[k % 3]));
    const ScalarField u = random_data(g, rng, k % 2);
    const double r = radius(rng);
    o.require(mask_diff(upper_contact_set(u, tol).member, oracle::lp_contact_2d(u, tol)) == 0, "2D Gamma+");
    o.require(mask_diff(slope_restricted_contact(u, r, tol).member, oracle::lp_contact_2d(u, tol, r)) == 0,
              "2D Gamma+_r");
    nodes += g->size();
  }
  for (int n = 1; n <= 2; ++n) {
    const auto g = Grid::build(GridSpec::box(n, 1.0 / 16.0));
    const std::size_t interior = g->interior_nodes().size();
    const ScalarField concave = closed_form("neg_bump").sample(g).scaled(-1.0);
    o.require(upper_contact_set(concave, tol).count() == interior, "concave => full");
    const Mask lp = n == 1 ? oracle::lp_contact_1d(concave, tol) : oracle::lp_contact_2d(concave, tol);
    o.require(mask_diff(upper_contact_set(concave, tol).member, lp) == 0, "concave oracle");
    o.require(upper_contact_set(closed_form("x2").sample(g), tol).count() == 0, "convex => empty");
    o.require(upper_contact_set(closed_form("abs").sample(g), tol).count() == 0, "|x| => empty");
  }
  if (o.pass) o.detail = "70 random grids (" + std::to_string(nodes) + " nodes) and canonical cases agree";
  return o;
}

// --- 4 ---------------------------------------------------------------------
Outcome abp_positive() {
  Outcome o;
  const EllipticityPair pair = constant_profile(1.0, 1.0);
  const double target = 1.0 / (4.0 * std::sqrt(std::numbers::pi));
  double c[2];
  const double hs[] = {1.0 / 32.0, 1.0 / 64.0};
  for (int k = 0; k < 2; ++k) {
    const auto g = Grid::build(GridSpec::ball(2, hs[k]));
    // u = (1 - |x|^2)/(2n) has M+(D^2 u) = -1 for lambda = Lambda = 1.
    const EstimateReport r = abp_report(closed_form("bump").sample(g), pair, ScalarField::constant(g, -1.0));
    o.require(r.verdict == Verdict::holds_with_constant, "verdict " + to_string(r.verdict));
    c[k] = r.empirical_constant;
  }
  const double dev = std::abs(c[1] - target) / target;
  const double var = std::abs(c[1] - c[0]) / c[1];
  o.require(dev < 0.05, "deviation from 1/(4 sqrt(pi)) " + std::to_string(dev));
  o.require(var < 0.10, "variation " + std::to_string(var));
  std::ostringstream os;
  os << "C(1/32) = " << c[0] << ", C(1/64) = " << c[1] << ", target " << target << ", deviation " << dev
     << ", variation " << var;
  if (o.pass) o.detail = os.str();
  return o;
}

// --- 5 ---------------------------------------------------------------------
Outcome counterexample_i() {
  Outcome o;
  const EllipticityPair pair = abs_gamma_profile(1.0);
  const ClosedForm v = closed_form("abs_minus_one");
  std::vector<double> second;
  for (double h : {1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0}) {
    const auto g = Grid::build(GridSpec::ball(1, h));
    const ScalarField vf = v.sample(g);
    const EstimateReport r = abp_min_report(vf, pair, ScalarField::constant(g, 0.0));
    o.require(r.verdict == Verdict::violated, "verdict " + to_string(r.verdict));
    o.require(r.lhs == 1.0 && r.rhs_core == 0.0, "lhs/rhs_core");
    second.push_back(central_hessian(vf).max_spectral_norm());
  }
  std::ostringstream os;
  os << "violated at h = 1/16, 1/32, 1/64; |D^2 v|_inf growth";
  for (std::size_t k = 1; k < second.size(); ++k) {
    const double ratio = second[k] / second[k - 1];
    o.require(std::abs(ratio - 2.0) <= 0.1, "growth factor " + std::to_string(ratio));
    os << ' ' << ratio;
  }
  if (o.pass) o.detail = os.str();
  return o;
}

// --- 6 ---------------------------------------------------------------------
Outcome counterexample_ii() {
  Outcome o;
  const ProblemBundle b = gallery("y2cosx");
  const BundleResult fine = run_bundle(b, 1.0 / 64.0);
  const BundleResult coarse = run_bundle(b, 1.0 / 32.0);
  o.require(fine.all_matched, "bundle expectations");
  double c_fine = 0.0, c_coarse = 0.0;
  for (const auto& c : fine.checks) {
    if (c.check_id == "strong_residual") c_fine = c.row.empirical_constant;
    if (c.check_id == "weak_harnack" || c.check_id == "harnack")
      o.require(c.actual == "violated" && std::isinf(c.row.empirical_constant), c.check_id + " not violated");
  }
  for (const auto& c : coarse.checks)
    if (c.check_id == "strong_residual") c_coarse = c.row.empirical_constant;
  // |L_h u| / h^2 must stay bounded under refinement.
  o.require(std::isfinite(c_fine) && c_fine <= 1.5 * c_coarse + 1e-3, "residual not O(h^2)");
  std::ostringstream os;
  os << "all expectations met; max|L_h u|/h^2 = " << c_coarse << " (1/32), " << c_fine << " (1/64)";
  if (o.pass) o.detail = os.str();
  return o;
}

// --- 7 ---------------------------------------------------------------------
Outcome admissibility() {
  Outcome o;
  // (p, q, n) scan with exact integer predicates; 0 encodes infinity.
  const int values[] = {1, 2, 3, 4, 5, 6, 8, 9, 12, 16, 0};
  int scanned = 0;
  for (int n = 1; n <= 3; ++n)
    for (int p : values)
      for (int q : values) {
        const long pq = long(p) * q;
        auto lhs_num = [&](int mult) {
          // sign of (1/p + 1/q) - 1/(mult n), cross-multiplied in integers
          if (p == 0 && q == 0) return -1;  // 0 < bound
          if (p == 0) return mult * n < q ? -1 : (mult * n == q ? 0 : 1);
          if (q == 0) return mult * n < p ? -1 : (mult * n == p ? 0 : 1);
          const long a = long(mult) * n * (p + q);
          return a < pq ? -1 : (a == pq ? 0 : 1);
        };
        const double pd = p == 0 ? INFINITY : p, qd = q == 0 ? INFINITY : q;
        const bool abp = lhs_num(1) <= 0;
        const bool wh = lhs_num(2) < 0;
        o.require(check_admissible(pd, qd, n, AdmissibilityMode::abp).admissible == abp,
                  "ABP predicate at p=" + std::to_string(p) + " q=" + std::to_string(q) + " n=" + std::to_string(n));
        o.require(check_admissible(pd, qd, n, AdmissibilityMode::weak_harnack).admissible == wh,
                  "weak Harnack predicate at p=" + std::to_string(p) + " q=" + std::to_string(q));
        ++scanned;
      }
  // Grushin: alpha = k/101 plus the exact boundary 1/2.
  for (int k = 1; k <= 100; ++k) {
    const double a = k / 101.0;
    const bool want = 2 * k < 101;
    o.require(check_admissible(grushin_alpha_profile(a), AdmissibilityMode::abp).admissible == want,
              "grushin alpha=" + std::to_string(a));
  }
  o.require(!check_admissible(grushin_alpha_profile(0.5), AdmissibilityMode::abp).admissible, "grushin 1/2");
  // Fractional: s = k/101 with n = n_x horizontal variables.
  for (int n_x = 1; n_x <= 2; ++n_x) {
    const int n = n_x;
    for (int k = 1; k <= 100; ++k) {
      const double s = k / 101.0;
      const bool want = long(k) * (2 * n + 3) > 101L * (n + 1) && long(k) * (2 * n + 1) < 101L * (n + 1);
      o.require(check_admissible(fractional_s_profile(s, n_x), AdmissibilityMode::abp).admissible == want,
                "fractional s=" + std::to_string(s) + " n=" + std::to_string(n));
    }
  }
  if (o.pass)
    o.detail = std::to_string(scanned) + " (p,q,n) points for ABP and weak Harnack, 101 grushin, 200 fractional";
  return o;
}

// --- 8 ---------------------------------------------------------------------
double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

Outcome solver() {
  Outcome o;
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  SolverOptions so;
  so.tol = 1e-12;
  double worst_res = 0.0;
  for (int k = 0; k < 5; ++k) {
    std::ostringstream id;
    id << "quadratic(" << d(rng) << ',' << d(rng) << ',' << d(rng) << ',' << d(rng) << ',' << d(rng) << ','
       << d(rng) << ')';
    const ClosedForm q = closed_form(id.str());
    const auto g = Grid::build(GridSpec::ball(2, 1.0 / 16.0));
    const DiagonalOperator op = linear_operator(k % 2 ? "grushin(0.5)" : "laplace(2)");
    const ManufacturedRhs m = manufactured_rhs(q, op, g);
    const SolveResult r = solve_linear_dirichlet(LinearProblem{g, op.sample(g), m.f, q.sample(g)}, so);
    worst_res = std::max(worst_res, r.residual);
    o.require(r.residual <= 1e-10, "quadratic residual");
    o.require(max_abs_diff(r.u, q.sample(g)) <= 1e-9, "quadratic not reproduced");
  }
  std::vector<double> err;
  for (double h : {1.0 / 16.0, 1.0 / 32.0}) {
    const auto g = Grid::build(GridSpec::ball(2, h));
    const ClosedForm u = closed_form("y2cosx");
    const DiagonalOperator op = linear_operator("y2cosx");
    const ManufacturedRhs m = manufactured_rhs(u, op, g);
    err.push_back(max_abs_diff(solve_linear_dirichlet(LinearProblem{g, op.sample(g), m.f, u.sample(g)}, so).u,
                               u.sample(g)));
  }
  const double order = std::log2(err[0] / err[1]);
  o.require(order >= 1.8, "observed order " + std::to_string(order));
  const auto g = Grid::build(GridSpec::ball(2, 1.0 / 16.0));
  const DiagonalOperator op = linear_operator("grushin(0.25)");
  const Mask bm = boundary_mask(*g);
  for (int k = 0; k < 20; ++k) {
    std::vector<double> bd(g->size(), 0.0);
    for (std::size_t i : g->boundary_nodes()) bd[i] = d(rng);
    const ScalarField gb(g, bd);
    const SolveResult r = solve_linear_dirichlet(LinearProblem{g, op.sample(g), ScalarField::constant(g, 0.0), gb}, so);
    o.require(r.u.max() <= gb.max_over(bm) + 1e-10 && r.u.min() >= gb.min_over(bm) - 1e-10,
              "discrete maximum principle");
  }
  std::ostringstream os;
  os << "quadratic residual " << worst_res << ", y^2 cos x order " << order << ", 20 maximum-principle runs";
  if (o.pass) o.detail = os.str();
  return o;
}

// --- 9 ---------------------------------------------------------------------
Outcome comparison() {
  Outcome o;
  std::mt19937_64 rng(909);
  const auto g = Grid::build(GridSpec::ball(2, 1.0 / 16.0));
  const EllipticityPair pair = constant_profile(0.5, 2.0);
  for (int k = 0; k < 20; ++k) {
    const auto p = oracle::comparison_pair(rng, g, pair, false);
    o.require(comparison_check(p.u, p.v, pair, p.f).verdict == "holds", "matched pair " + std::to_string(k));
  }
  for (int k = 0; k < 5; ++k) {
    const auto p = oracle::comparison_pair(rng, g, pair, true);
    o.require(comparison_check(p.u, p.v, pair, p.f).verdict == "hypothesis_failure",
              "corrupted pair " + std::to_string(k));
  }
  if (o.pass) o.detail = "20 matched pairs hold, 5 corrupted pairs flagged";
  return o;
}

// --- 10 --------------------------------------------------------------------
Outcome cutoff() {
  Outcome o;
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> d(-0.57, 0.57);
  std::uniform_real_distribution<double> betas(2.0, 10.0);
  const double step = 1e-4;
  double worst_fd = 0.0, worst_eig = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + k % 3;
    const CutoffSpec c(betas(rng), n);
    Point x{};
    for (int i = 0; i < n; ++i) x[i] = d(rng);
    const Point gr = c.gradient(x);
    const SymMatrix H = c.hessian(x);
    for (int i = 0; i < n; ++i) {
      Point xp = x, xm = x;
      xp[i] += step;
      xm[i] -= step;
      // Relative to max(1, |exact|): Hessian entries grow like beta^2.
      const double dg = (c.eta(xp) - c.eta(xm)) / (2 * step);
      worst_fd = std::max(worst_fd, std::abs(gr[i] - dg) / std::max(1.0, std::abs(gr[i])));
      const Point gp = c.gradient(xp), gm = c.gradient(xm);
      for (int j = 0; j < n; ++j) {
        const double dh = (gp[j] - gm[j]) / (2 * step);
        worst_fd = std::max(worst_fd, std::abs(H(i, j) - dh) / std::max(1.0, std::abs(H(i, j))));
      }
    }
    const Spectrum a = c.eigenvalues(x), b = sym_eigenvalues(H);
    for (int i = 0; i < n; ++i) worst_eig = std::max(worst_eig, std::abs(a.values[i] - b.values[i]));
  }
  std::ostringstream os;
  os << "fd " << worst_fd << ", eig " << worst_eig << "; threshold";
  o.require(worst_fd <= 1e-6, "finite differences: " + os.str());
  o.require(worst_eig <= 1e-10, "eigenvalue formulas: " + os.str());
  for (int n = 1; n <= 3; ++n) {
    const double alpha = 1.0 / (3.0 * n);
    const double bstar = CutoffSpec::threshold_beta(alpha);
    // At and above the threshold the radial eigenvalue is >= 0 on alpha <= |x| < 1.
    for (double beta : {bstar, 1.5 * bstar, 3.0 * bstar}) {
      const CutoffSpec c(beta, n);
      double worst = INFINITY;
      for (int k = 0; k <= 200; ++k) {
        const double r = alpha + (1.0 - alpha) * k / 201.0;
        Point x{};
        x[0] = r;
        worst = std::min(worst, c.radial_eigenvalue(x));
      }
      o.require(worst >= 0.0, "radial eigenvalue negative beyond alpha at beta=" + std::to_string(beta));
    }
    // One unit below the threshold the flip happens outside B_alpha.
    const CutoffSpec below(bstar - 1.0, n);
    Point x{};
    x[0] = alpha;
    o.require(below.radial_eigenvalue(x) < 0.0, "threshold not sharp enough for n=" + std::to_string(n));
    os << " n=" << n << ":" << bstar;
  }
  if (o.pass) o.detail = os.str();
  return o;
}

// --- 11 --------------------------------------------------------------------
Outcome determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> runs{
      {"check", "--bundle", "y2cosx", "--h", "1/64"},
      {"check", "--bundle", "grushin", "--alpha", "0.25", "--h-list", "1/16,1/32"},
      {"sweep", "--sweep", "beta=2,4,8", "--dim", "2", "--h", "1/32"},
      {"convergence", "--op", "grushin(0)", "--u", "y2cosx", "--h-list", "1/8,1/16"},
  };
  for (const auto& args : runs) {
    std::ostringstream a, b, ea, eb;
    const int ca = cli::run(args, a, ea);
    const int cb = cli::run(args, b, eb);
    o.require(ca == cb && a.str() == b.str() && !a.str().empty(), "run '" + args[0] + " " + args[2] + "' differs");
  }
  if (o.pass) o.detail = std::to_string(runs.size()) + " golden runs byte-identical on repetition";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> fn;
  };
  const Criterion criteria[] = {
      {1, "pucci_algebra", 5.0, pucci_algebra},
      {2, "eigenvalue_oracle", 5.0, eigen_oracle},
      {3, "contact_oracle_equivalence", 60.0, contact_oracle},
      {4, "abp_positive_case", 0.0, abp_positive},
      {5, "counterexample_abs_gamma", 0.0, counterexample_i},
      {6, "counterexample_y2cosx", 0.0, counterexample_ii},
      {7, "admissibility_gate", 0.0, admissibility},
      {8, "solver", 0.0, solver},
      {9, "comparison_principle", 0.0, comparison},
      {10, "cutoff_eta", 0.0, cutoff},
      {11, "cli_determinism", 0.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0.0 && secs >= c.limit_s) {
      o.pass = false;
      o.detail += " (runtime limit " + std::to_string(c.limit_s) + " s exceeded)";
    }
    std::printf("%s criterion %d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    failures += !o.pass;
  }
  std::fflush(stdout);
  return failures;
}
