#include "abplab/hull.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "abplab/error.hpp"
#include "abplab/exact.hpp"

namespace abplab {

void orientation_coefficients(const LiftedPoints& pts, std::span<const std::size_t> idx, std::int64_t* c) {
  const int n = pts.n;
  const int rows = n + 2;
  std::int64_t minor[16];
  for (int j = 0; j < rows; ++j) {
    int w = 0;
    for (int r = 0; r < rows; ++r) {
      if (r == j) continue;
      const Lattice& k = pts.lattice[idx[r]];
      for (int a = 0; a < n; ++a) minor[w++] = k[a];
      minor[w++] = 1;
    }
    const std::int64_t d = exact::int_det(minor, n + 1);
    c[j] = ((j + n) % 2 == 0) ? d : -d;
  }
}

int lifted_orientation(const LiftedPoints& pts, std::span<const std::size_t> idx) {
  std::int64_t c[5];
  double u[5];
  const int rows = pts.n + 2;
  orientation_coefficients(pts, idx, c);
  for (int j = 0; j < rows; ++j) u[j] = pts.value[idx[j]];
  return exact::sign_of_dot({c, static_cast<std::size_t>(rows)}, {u, static_cast<std::size_t>(rows)});
}

namespace {

double orientation_approx(const LiftedPoints& pts, std::span<const std::size_t> idx) {
  std::int64_t c[5];
  orientation_coefficients(pts, idx, c);
  double s = 0.0;
  for (int j = 0; j < pts.n + 2; ++j) s += static_cast<double>(c[j]) * pts.value[idx[j]];
  return s;
}

UpperHull monotone_chain(const LiftedPoints& pts) {
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pts.lattice[a][0] < pts.lattice[b][0]; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (pts.lattice[order[i]][0] == pts.lattice[order[i - 1]][0])
      throw PreconditionError("upper_hull: repeated lattice coordinate");

  std::vector<std::size_t> chain;
  for (std::size_t p : order) {
    while (chain.size() >= 2) {
      const std::array<std::size_t, 3> idx{chain[chain.size() - 2], chain.back(), p};
      if (lifted_orientation(pts, idx) < 0) break;
      chain.pop_back();
    }
    chain.push_back(p);
  }
  UpperHull hull;
  hull.n = 1;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) hull.facets.push_back({chain[i], chain[i + 1], 0, 0});
  hull.affine = chain.size() == 2 && pts.size() > 2;
  return hull;
}

// Gram determinant test for affine independence of lattice points.
bool independent(const LiftedPoints& pts, const std::vector<std::size_t>& set) {
  const int m = static_cast<int>(set.size()) - 1;
  if (m <= 0) return true;
  std::int64_t diff[3][3] = {};
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < pts.n; ++a) diff[i][a] = pts.lattice[set[i + 1]][a] - pts.lattice[set[0]][a];
  std::int64_t gram[9];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      std::int64_t s = 0;
      for (int a = 0; a < pts.n; ++a) s += diff[i][a] * diff[j][a];
      gram[i * m + j] = s;
    }
  return exact::int_det(gram, m) != 0;
}

class Quickhull {
 public:
  explicit Quickhull(const LiftedPoints& pts) : pts_(pts), d_(pts.n + 1) {}

  UpperHull run() {
    UpperHull hull;
    hull.n = pts_.n;

    std::vector<std::size_t> base;
    for (std::size_t i = 0; i < pts_.size() && static_cast<int>(base.size()) < d_; ++i) {
      base.push_back(i);
      if (!independent(pts_, base)) base.pop_back();
    }
    if (static_cast<int>(base.size()) < d_)
      throw PreconditionError("concave envelope needs dim+1 affinely independent nodes");

    std::vector<std::size_t> q(base);
    q.push_back(0);
    std::size_t apex = pts_.size();
    double best = 0.0;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      q.back() = i;
      const double a = std::abs(orientation_approx(pts_, q));
      if (a > best) {
        best = a;
        apex = i;
      }
    }
    if (apex < pts_.size()) {
      q.back() = apex;
      if (lifted_orientation(pts_, q) == 0) apex = pts_.size();
    }
    if (apex == pts_.size()) {
      for (std::size_t i = 0; i < pts_.size(); ++i) {
        q.back() = i;
        if (lifted_orientation(pts_, q) != 0) {
          apex = i;
          break;
        }
      }
    }
    if (apex == pts_.size()) {
      hull.affine = true;
      FacetVertices f{};
      std::copy(base.begin(), base.end(), f.begin());
      hull.facets.push_back(f);
      return hull;
    }

    build_simplex(base, apex);
    expand();

    for (const Facet& f : facets_) {
      if (!f.alive) continue;
      std::vector<std::size_t> idx(f.v.begin(), f.v.begin() + d_);
      idx.push_back(f.v[0]);
      std::int64_t c[5];
      orientation_coefficients(pts_, idx, c);
      if (c[d_] > 0) hull.facets.push_back(f.v);
    }
    return hull;
  }

 private:
  struct Facet {
    FacetVertices v{};
    std::array<int, 4> nb{-1, -1, -1, -1};
    std::vector<std::size_t> outside;
    std::size_t far = 0;
    double far_value = -1.0;
    bool alive = true;
  };

  int side(const Facet& f, std::size_t p) const {
    std::array<std::size_t, 5> idx{};
    std::copy(f.v.begin(), f.v.begin() + d_, idx.begin());
    idx[d_] = p;
    return lifted_orientation(pts_, {idx.data(), static_cast<std::size_t>(d_ + 1)});
  }

  double height(const Facet& f, std::size_t p) const {
    std::array<std::size_t, 5> idx{};
    std::copy(f.v.begin(), f.v.begin() + d_, idx.begin());
    idx[d_] = p;
    return orientation_approx(pts_, {idx.data(), static_cast<std::size_t>(d_ + 1)});
  }

  bool assign(std::size_t p, const std::vector<int>& candidates) {
    for (int fi : candidates) {
      Facet& f = facets_[fi];
      if (side(f, p) > 0) {
        f.outside.push_back(p);
        const double ht = height(f, p);
        if (ht > f.far_value) {
          f.far_value = ht;
          f.far = p;
        }
        return true;
      }
    }
    return false;
  }

  void build_simplex(const std::vector<std::size_t>& base, std::size_t apex) {
    std::vector<std::size_t> s(base);
    s.push_back(apex);
    const int m = d_ + 1;
    for (int i = 0; i < m; ++i) {
      Facet f;
      int w = 0;
      for (int j = 0; j < m; ++j)
        if (j != i) f.v[w++] = s[j];
      if (side(f, s[i]) > 0) std::swap(f.v[0], f.v[1]);
      facets_.push_back(f);
    }
    for (int i = 0; i < m; ++i) {
      Facet& f = facets_[i];
      for (int a = 0; a < d_; ++a) {
        const auto it = std::find(s.begin(), s.end(), f.v[a]);
        f.nb[a] = static_cast<int>(it - s.begin());
      }
    }
    std::vector<int> all(m);
    std::iota(all.begin(), all.end(), 0);
    for (std::size_t p = 0; p < pts_.size(); ++p) {
      if (std::find(s.begin(), s.end(), p) != s.end()) continue;
      assign(p, all);
    }
  }

  void expand() {
    std::vector<int> work;
    for (int i = 0; i < static_cast<int>(facets_.size()); ++i) work.push_back(i);
    std::vector<int> stamp;
    std::vector<char> vis;
    int iteration = 0;

    while (!work.empty()) {
      const int start = work.back();
      work.pop_back();
      if (!facets_[start].alive || facets_[start].outside.empty()) continue;
      ++iteration;
      const std::size_t p = facets_[start].far;

      stamp.resize(facets_.size(), 0);
      vis.resize(facets_.size(), 0);
      std::vector<int> visible{start};
      stamp[start] = iteration;
      vis[start] = 1;
      std::vector<std::pair<int, int>> horizon;
      for (std::size_t k = 0; k < visible.size(); ++k) {
        const int fi = visible[k];
        for (int a = 0; a < d_; ++a) {
          const int nb = facets_[fi].nb[a];
          if (stamp[nb] != iteration) {
            stamp[nb] = iteration;
            vis[nb] = side(facets_[nb], p) > 0 ? 1 : 0;
            if (vis[nb]) visible.push_back(nb);
          }
          if (!vis[nb]) horizon.emplace_back(fi, a);
        }
      }

      std::vector<int> created;
      std::map<std::array<std::size_t, 3>, std::pair<int, int>> ridges;
      for (const auto& [fi, a] : horizon) {
        Facet nf;
        nf.v = facets_[fi].v;
        nf.v[a] = p;
        const int across = facets_[fi].nb[a];
        nf.nb[a] = across;
        const int id = static_cast<int>(facets_.size());
        for (int b = 0; b < d_; ++b)
          if (facets_[across].nb[b] == fi) facets_[across].nb[b] = id;
        for (int b = 0; b < d_; ++b) {
          if (b == a) continue;
          std::array<std::size_t, 3> key;
          key.fill(std::numeric_limits<std::size_t>::max());
          int w = 0;
          for (int c = 0; c < d_; ++c)
            if (c != b) key[w++] = nf.v[c];
          std::sort(key.begin(), key.begin() + w);
          const auto it = ridges.find(key);
          if (it == ridges.end()) {
            ridges.emplace(key, std::make_pair(id, b));
          } else {
            nf.nb[b] = it->second.first;
            facets_[it->second.first].nb[it->second.second] = id;
            ridges.erase(it);
          }
        }
        facets_.push_back(std::move(nf));
        created.push_back(id);
      }

      std::vector<std::size_t> orphans;
      for (int fi : visible) {
        facets_[fi].alive = false;
        for (std::size_t q : facets_[fi].outside)
          if (q != p) orphans.push_back(q);
        facets_[fi].outside.clear();
        facets_[fi].outside.shrink_to_fit();
      }
      for (std::size_t q : orphans) assign(q, created);
      for (int id : created) work.push_back(id);
    }
  }

  const LiftedPoints& pts_;
  int d_;
  std::vector<Facet> facets_;
};

}  // namespace

UpperHull upper_hull(const LiftedPoints& pts) {
  if (pts.n < 1 || pts.n > 3) throw PreconditionError("upper_hull: n must be 1, 2 or 3");
  if (pts.lattice.size() != pts.value.size()) throw PreconditionError("upper_hull: size mismatch");
  if (pts.size() < static_cast<std::size_t>(pts.n + 1))
    throw PreconditionError("concave envelope needs dim+1 affinely independent nodes");
  if (pts.n == 1) return monotone_chain(pts);
  return Quickhull(pts).run();
}

}  // namespace abplab
