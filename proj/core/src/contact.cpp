#include "abplab/contact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "abplab/error.hpp"
#include "abplab/exact.hpp"
#include "abplab/hull.hpp"

namespace abplab {

namespace {

struct Plane {
  Lattice k0{};
  double u0 = 0.0;
  std::array<long double, 3> g{};  // lattice-unit gradient

  double at(const Lattice& k, int n) const {
    long double z = u0;
    for (int a = 0; a < n; ++a) z += g[a] * static_cast<long double>(k[a] - k0[a]);
    return static_cast<double>(z);
  }
};

Plane facet_plane(const LiftedPoints& pts, const FacetVertices& f) {
  const int n = pts.n;
  Plane pl;
  pl.k0 = pts.lattice[f[0]];
  pl.u0 = pts.value[f[0]];
  std::int64_t D[9];
  long double du[3];
  for (int j = 0; j < n; ++j) {
    const Lattice& k = pts.lattice[f[j + 1]];
    for (int a = 0; a < n; ++a) D[j * n + a] = k[a] - pl.k0[a];
    du[j] = static_cast<long double>(pts.value[f[j + 1]]) - pl.u0;
  }
  const long double det = static_cast<long double>(exact::int_det(D, n));
  if (det == 0.0L) throw Error("concave envelope: degenerate upper facet");
  // Cramer: column a of D replaced by du, expanded along that column.
  for (int a = 0; a < n; ++a) {
    long double s = 0.0L;
    for (int j = 0; j < n; ++j) {
      std::int64_t minor[4];
      int w = 0;
      for (int r = 0; r < n; ++r) {
        if (r == j) continue;
        for (int c = 0; c < n; ++c)
          if (c != a) minor[w++] = D[r * n + c];
      }
      const long double cof = static_cast<long double>(n == 1 ? 1 : exact::int_det(minor, n - 1));
      s += (((j + a) % 2 == 0) ? 1.0L : -1.0L) * du[j] * cof;
    }
    pl.g[a] = s / det;
  }
  return pl;
}

// Closed containment of lattice point k in the simplex spanned by the facet's
// projected vertices, by exact barycentric signs.
bool covers(const LiftedPoints& pts, const FacetVertices& f, const Lattice& k, std::int64_t full) {
  const int n = pts.n;
  std::int64_t m[16];
  for (int j = 0; j <= n; ++j) {
    int w = 0;
    for (int r = 0; r <= n; ++r) {
      const Lattice& kr = r == j ? k : pts.lattice[f[r]];
      for (int a = 0; a < n; ++a) m[w++] = kr[a];
      m[w++] = 1;
    }
    const std::int64_t d = exact::int_det(m, n + 1);
    if ((full > 0 && d < 0) || (full < 0 && d > 0)) return false;
  }
  return true;
}

}  // namespace

Envelope envelope_data(const ScalarField& u) {
  if (u.extended()) throw PreconditionError("concave_envelope: u must be finite");
  const Grid& g = u.grid();
  const int n = g.dim();
  std::vector<Lattice> lat(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) lat[i] = g.lattice(i);
  const LiftedPoints pts{n, lat, u.values()};
  const UpperHull hull = upper_hull(pts);

  std::vector<Plane> planes;
  planes.reserve(hull.facets.size());
  for (const auto& f : hull.facets) planes.push_back(facet_plane(pts, f));

  std::vector<std::vector<std::size_t>> cover(g.size());
  if (hull.affine) {
    for (auto& c : cover) c.push_back(0);
  } else {
    for (std::size_t fi = 0; fi < hull.facets.size(); ++fi) {
      const FacetVertices& f = hull.facets[fi];
      std::int64_t m[16];
      int w = 0;
      Lattice lo = lat[f[0]], hi = lat[f[0]];
      for (int r = 0; r <= n; ++r) {
        for (int a = 0; a < n; ++a) {
          m[w++] = lat[f[r]][a];
          lo[a] = std::min(lo[a], lat[f[r]][a]);
          hi[a] = std::max(hi[a], lat[f[r]][a]);
        }
        m[w++] = 1;
      }
      const std::int64_t full = exact::int_det(m, n + 1);
      Lattice k{0, 0, 0};
      for (k[2] = lo[2]; k[2] <= hi[2]; ++k[2])
        for (k[1] = lo[1]; k[1] <= hi[1]; ++k[1])
          for (k[0] = lo[0]; k[0] <= hi[0]; ++k[0]) {
            const auto node = g.find(k);
            if (node && covers(pts, f, k, full)) cover[*node].push_back(fi);
          }
    }
  }

  Envelope env{ScalarField(u.grid_ptr(), std::vector<double>(u.values().begin(), u.values().end())), {}, {}, {}};
  env.affine = hull.affine;
  const double h = g.spacing();
  for (const Plane& pl : planes) {
    Point grad{0.0, 0.0, 0.0};
    for (int a = 0; a < n; ++a) grad[a] = static_cast<double>(pl.g[a] / h);
    env.facet_gradient.push_back(grad);
  }
  std::vector<double> val(g.size());
  env.cover_offset.assign(g.size() + 1, 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (cover[i].empty()) throw Error("concave envelope: node not covered by any upper facet");
    double z = kInfinity;
    for (std::size_t fi : cover[i]) z = std::min(z, planes[fi].at(lat[i], n));
    val[i] = std::max(u[i], z);
    env.cover_offset[i + 1] = env.cover_offset[i] + cover[i].size();
    env.cover_ids.insert(env.cover_ids.end(), cover[i].begin(), cover[i].end());
  }
  env.value = ScalarField(u.grid_ptr(), std::move(val));
  return env;
}

ScalarField concave_envelope(const ScalarField& u) { return envelope_data(u).value; }

double default_contact_tol(const ScalarField& u) { return 1e-8 * (1.0 + (u.max() - u.min())); }

Point min_norm_point(std::span<const Point> input, int n) {
  if (input.empty()) throw PreconditionError("min_norm_point: empty point set");
  std::vector<Point> pts;
  for (const Point& p : input)
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  double scale = 0.0;
  for (const Point& p : pts) scale = std::max(scale, dot(p, p, n));
  if (scale == 0.0) return Point{0.0, 0.0, 0.0};
  const double eps = 1e-12;

  std::size_t start = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (dot(pts[i], pts[i], n) < dot(pts[start], pts[start], n)) start = i;
  std::vector<std::size_t> S{start};
  std::vector<double> w{1.0};
  Point x = pts[start];

  for (int major = 0; major < 200; ++major) {
    std::size_t j = 0;
    double best = kInfinity;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double v = dot(pts[i], x, n);
      if (v < best) {
        best = v;
        j = i;
      }
    }
    if (dot(x, x, n) - best <= eps * scale) break;
    if (std::find(S.begin(), S.end(), j) != S.end()) break;
    if (static_cast<int>(S.size()) > n) break;
    S.push_back(j);
    w.push_back(0.0);

    for (int minor = 0; minor < 50; ++minor) {
      // Affine minimiser: [G 1; 1^T 0][alpha; mu] = [0; 1].
      const int m = static_cast<int>(S.size());
      long double A[5][6] = {};
      for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) A[r][c] = dot(pts[S[r]], pts[S[c]], n);
        A[r][m] = 1.0L;
        A[m][r] = 1.0L;
      }
      A[m][m + 1] = 1.0L;
      const int size = m + 1;
      bool singular = false;
      for (int c = 0; c < size; ++c) {
        int piv = c;
        for (int r = c + 1; r < size; ++r)
          if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        if (std::abs(A[piv][c]) < 1e-300L) {
          singular = true;
          break;
        }
        std::swap(A[c], A[piv]);
        for (int r = 0; r < size; ++r) {
          if (r == c) continue;
          const long double fct = A[r][c] / A[c][c];
          for (int k = c; k <= size; ++k) A[r][k] -= fct * A[c][k];
        }
      }
      if (singular) {
        // Affinely dependent support: drop the newest point and stop.
        S.pop_back();
        w.pop_back();
        return x;
      }
      std::vector<double> alpha(m);
      for (int r = 0; r < m; ++r) alpha[r] = static_cast<double>(A[r][size] / A[r][r]);

      if (*std::min_element(alpha.begin(), alpha.end()) > 1e-15) {
        w = alpha;
        break;
      }
      double theta = 1.0;
      for (int r = 0; r < m; ++r)
        if (alpha[r] <= 1e-15) theta = std::min(theta, w[r] / (w[r] - alpha[r]));
      for (int r = 0; r < m; ++r) w[r] = theta * alpha[r] + (1.0 - theta) * w[r];
      std::vector<std::size_t> S2;
      std::vector<double> w2;
      for (int r = 0; r < m; ++r)
        if (w[r] > 1e-15) {
          S2.push_back(S[r]);
          w2.push_back(w[r]);
        }
      S.swap(S2);
      w.swap(w2);
      const double sum = std::accumulate(w.begin(), w.end(), 0.0);
      for (double& v : w) v /= sum;
    }
    x = Point{0.0, 0.0, 0.0};
    for (std::size_t r = 0; r < S.size(); ++r)
      for (int a = 0; a < n; ++a) x[a] += w[r] * pts[S[r]][a];
  }
  return x;
}

namespace {

ContactMask contact_impl(const ScalarField& u, double r, std::optional<double> tol) {
  const Grid& g = u.grid();
  const int n = g.dim();
  const Envelope env = envelope_data(u);
  ContactMask m{u.grid_ptr(), Mask(g.size(), false), std::vector<Point>(g.size(), Point{0.0, 0.0, 0.0}),
                tol ? *tol : default_contact_tol(u), r};
  if (m.tol < 0.0) throw PreconditionError("contact tolerance must be nonnegative");
  std::vector<Point> grads;
  for (std::size_t i : g.interior_nodes()) {
    if (u[i] < env.value[i] - m.tol) continue;
    grads.clear();
    for (std::size_t fi : env.covering(i)) grads.push_back(env.facet_gradient[fi]);
    const Point p = min_norm_point(grads, n);
    if (std::isfinite(r) && norm(p, n) > r * (1.0 + 1e-12)) continue;
    m.member[i] = true;
    m.slope[i] = p;
  }
  return m;
}

}  // namespace

ContactMask upper_contact_set(const ScalarField& u, std::optional<double> tol) {
  return contact_impl(u, kInfinity, tol);
}

ContactMask slope_restricted_contact(const ScalarField& u, double r, std::optional<double> tol) {
  if (!(r > 0.0)) throw PreconditionError("slope_restricted_contact: r must be positive");
  return contact_impl(u, r, tol);
}

double witness_defect(const ContactMask& m, const ScalarField& u) {
  const Grid& g = u.grid();
  const int n = g.dim();
  double worst = -kInfinity;
  for (std::size_t x = 0; x < g.size(); ++x) {
    if (!m.member[x]) continue;
    const Point px = g.position(x);
    for (std::size_t y = 0; y < g.size(); ++y) {
      const Point py = g.position(y);
      double lin = 0.0;
      for (int a = 0; a < n; ++a) lin += m.slope[x][a] * (py[a] - px[a]);
      worst = std::max(worst, u[y] - u[x] - lin - m.tol);
    }
  }
  return worst;
}

StabilityReport contact_stability_probe(const ScalarField& u, const std::vector<ScalarField>& perturbations,
                                        std::optional<double> tol) {
  const double t = tol ? *tol : default_contact_tol(u);
  const ScalarField env = concave_envelope(u);
  StabilityReport rep;
  for (const ScalarField& d : perturbations) {
    StabilityEntry e;
    e.sup_perturbation = std::max(std::abs(d.max()), std::abs(d.min()));
    const ContactMask pm = upper_contact_set(u + d, t);
    for (std::size_t i = 0; i < pm.member.size(); ++i) {
      if (!pm.member[i]) continue;
      ++e.members;
      if (u[i] < env[i] - 2.0 * e.sup_perturbation - t) ++e.outside;
    }
    e.contained = e.outside == 0;
    rep.all_contained = rep.all_contained && e.contained;
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace abplab
