#include "abplab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "abplab/error.hpp"

namespace abplab {

std::string to_string(Shape s) { return s == Shape::ball ? "ball" : "box"; }

GridSpec GridSpec::ball(int dim, double h, double radius) {
  GridSpec s;
  s.dim = dim;
  s.shape = Shape::ball;
  s.h = h;
  s.radius = radius;
  return s;
}

GridSpec GridSpec::box(int dim, double h, double a, double b) {
  GridSpec s;
  s.dim = dim;
  s.shape = Shape::box;
  s.h = h;
  s.lo = {a, a, a};
  s.hi = {b, b, b};
  return s;
}

std::shared_ptr<const Grid> Grid::build(const GridSpec& spec) {
  if (spec.dim < 1 || spec.dim > 3) throw PreconditionError("build_grid: dim must be 1, 2 or 3");
  if (!(spec.h > 0.0) || !std::isfinite(spec.h)) throw PreconditionError("build_grid: spacing must be positive");

  std::shared_ptr<Grid> g(new Grid());
  g->spec_ = spec;
  const int n = spec.dim;
  const double h = spec.h;
  for (int i = n; i < 3; ++i) {
    g->spec_.lo[i] = 0.0;
    g->spec_.hi[i] = 0.0;
  }

  if (spec.shape == Shape::ball) {
    if (!(spec.radius > 0.0)) throw PreconditionError("build_grid: ball radius must be positive");
    if (h > 2.0 * spec.radius) throw PreconditionError("build_grid: spacing larger than domain diameter");
    const double rho = spec.radius / h;
    const int m = static_cast<int>(std::floor(rho + 1e-9));
    for (int i = 0; i < n; ++i) {
      g->kmin_[i] = -m;
      g->kmax_[i] = m;
    }
    g->origin_ = {0.0, 0.0, 0.0};
  } else {
    double diam2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double len = spec.hi[i] - spec.lo[i];
      if (!(len > 0.0)) throw PreconditionError("build_grid: box side must have positive length");
      diam2 += len * len;
      const double ratio = len / h;
      const double steps = std::round(ratio);
      if (std::abs(ratio - steps) > 1e-9 * std::max(1.0, steps) || steps < 1.0) {
        std::ostringstream os;
        os << "build_grid: spacing " << h << " does not divide box side " << len;
        throw PreconditionError(os.str());
      }
      g->kmin_[i] = 0;
      g->kmax_[i] = static_cast<int>(steps);
      g->origin_[i] = spec.lo[i];
    }
    if (h > std::sqrt(diam2)) throw PreconditionError("build_grid: spacing larger than domain diameter");
  }

  for (int i = 0; i < 3; ++i) g->extent_[i] = static_cast<std::size_t>(g->kmax_[i] - g->kmin_[i] + 1);
  g->dense_index_.assign(g->extent_[0] * g->extent_[1] * g->extent_[2], -1);

  const double rho = spec.radius / h;
  const double inner = rho - 1.0;
  Lattice k{0, 0, 0};
  for (k[2] = g->kmin_[2]; k[2] <= g->kmax_[2]; ++k[2]) {
    for (k[1] = g->kmin_[1]; k[1] <= g->kmax_[1]; ++k[1]) {
      for (k[0] = g->kmin_[0]; k[0] <= g->kmax_[0]; ++k[0]) {
        bool include = true;
        bool interior = true;
        if (spec.shape == Shape::ball) {
          const double r2 = static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1] +
                            static_cast<double>(k[2]) * k[2];
          include = r2 <= rho * rho * (1.0 + 1e-12) + 1e-12;
          interior = inner >= 0.0 && r2 <= inner * inner * (1.0 + 1e-12) + 1e-12;
        } else {
          for (int i = 0; i < n; ++i)
            if (k[i] == g->kmin_[i] || k[i] == g->kmax_[i]) interior = false;
        }
        if (!include) continue;
        const std::size_t dense = static_cast<std::size_t>(k[0] - g->kmin_[0]) +
                                  g->extent_[0] * (static_cast<std::size_t>(k[1] - g->kmin_[1]) +
                                                   g->extent_[1] * static_cast<std::size_t>(k[2] - g->kmin_[2]));
        g->dense_index_[dense] = static_cast<long>(g->lattice_.size());
        if (interior)
          g->interior_list_.push_back(g->lattice_.size());
        else
          g->boundary_list_.push_back(g->lattice_.size());
        g->lattice_.push_back(k);
        g->interior_.push_back(interior ? 1 : 0);
      }
    }
  }
  if (g->lattice_.empty()) throw PreconditionError("build_grid: grid has no nodes");
  g->cell_volume_ = std::pow(h, n);
  return g;
}

Point Grid::position(std::size_t node) const { return position(lattice_[node]); }

Point Grid::position(const Lattice& k) const {
  Point x{0.0, 0.0, 0.0};
  for (int i = 0; i < spec_.dim; ++i) x[i] = origin_[i] + spec_.h * k[i];
  return x;
}

std::optional<std::size_t> Grid::find(const Lattice& k) const {
  for (int i = 0; i < 3; ++i)
    if (k[i] < kmin_[i] || k[i] > kmax_[i]) return std::nullopt;
  const std::size_t dense = static_cast<std::size_t>(k[0] - kmin_[0]) +
                            extent_[0] * (static_cast<std::size_t>(k[1] - kmin_[1]) +
                                          extent_[1] * static_cast<std::size_t>(k[2] - kmin_[2]));
  const long idx = dense_index_[dense];
  if (idx < 0) return std::nullopt;
  return static_cast<std::size_t>(idx);
}

std::optional<std::size_t> Grid::neighbor(std::size_t node, int axis, int steps) const {
  Lattice k = lattice_[node];
  k[axis] += steps;
  return find(k);
}

double Grid::surface_area() const noexcept {
  const int n = spec_.dim;
  if (spec_.shape == Shape::ball) {
    const double r = spec_.radius;
    if (n == 1) return 2.0;
    if (n == 2) return 2.0 * std::numbers::pi * r;
    return 4.0 * std::numbers::pi * r * r;
  }
  if (n == 1) return 2.0;
  const double a = spec_.hi[0] - spec_.lo[0];
  const double b = spec_.hi[1] - spec_.lo[1];
  if (n == 2) return 2.0 * (a + b);
  const double c = spec_.hi[2] - spec_.lo[2];
  return 2.0 * (a * b + b * c + a * c);
}

double Grid::domain_volume() const noexcept {
  const int n = spec_.dim;
  if (spec_.shape == Shape::ball) {
    const double r = spec_.radius;
    if (n == 1) return 2.0 * r;
    if (n == 2) return std::numbers::pi * r * r;
    return 4.0 / 3.0 * std::numbers::pi * r * r * r;
  }
  double v = 1.0;
  for (int i = 0; i < n; ++i) v *= spec_.hi[i] - spec_.lo[i];
  return v;
}

double Grid::diameter() const noexcept {
  if (spec_.shape == Shape::ball) return 2.0 * spec_.radius;
  double d2 = 0.0;
  for (int i = 0; i < spec_.dim; ++i) d2 += (spec_.hi[i] - spec_.lo[i]) * (spec_.hi[i] - spec_.lo[i]);
  return std::sqrt(d2);
}

bool Grid::contains(const Point& x, double slack) const {
  if (spec_.shape == Shape::ball) return norm(x, spec_.dim) <= spec_.radius + slack;
  for (int i = 0; i < spec_.dim; ++i)
    if (x[i] < spec_.lo[i] - slack || x[i] > spec_.hi[i] + slack) return false;
  return true;
}

Mask interior_mask(const Grid& g) {
  Mask m(g.size(), false);
  for (std::size_t i : g.interior_nodes()) m[i] = true;
  return m;
}

Mask boundary_mask(const Grid& g) {
  Mask m(g.size(), false);
  for (std::size_t i : g.boundary_nodes()) m[i] = true;
  return m;
}

Mask ball_mask(const Grid& g, const Point& center, double radius, bool interior_only) {
  Mask m(g.size(), false);
  const int n = g.dim();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (interior_only && !g.is_interior(i)) continue;
    Point x = g.position(i);
    for (int a = 0; a < n; ++a) x[a] -= center[a];
    m[i] = norm(x, n) <= radius * (1.0 + 1e-12) + 1e-14;
  }
  return m;
}

Mask mask_and(const Mask& a, const Mask& b) {
  if (a.size() != b.size()) throw PreconditionError("mask_and: size mismatch");
  Mask m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] && b[i];
  return m;
}

std::size_t mask_count(const Mask& m) { return static_cast<std::size_t>(std::count(m.begin(), m.end(), true)); }

// --- ScalarField ------------------------------------------------------------

ScalarField::ScalarField(GridPtr grid, std::vector<double> values, bool extended)
    : grid_(std::move(grid)), values_(std::move(values)), extended_(extended) {
  if (!grid_) throw PreconditionError("ScalarField: null grid");
  if (values_.size() != grid_->size()) throw PreconditionError("ScalarField: value count differs from node count");
  for (double v : values_) {
    if (std::isnan(v)) throw PreconditionError("ScalarField: NaN value");
    if (!extended_ && !std::isfinite(v)) throw PreconditionError("ScalarField: non-finite value in a finite field");
  }
}

ScalarField ScalarField::constant(GridPtr grid, double value) {
  const std::size_t n = grid->size();
  return ScalarField(std::move(grid), std::vector<double>(n, value));
}

ScalarField ScalarField::sample(GridPtr grid, const std::function<double(const Point&)>& fn, bool extended) {
  std::vector<double> v(grid->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid->position(i));
  return ScalarField(std::move(grid), std::move(v), extended);
}

ScalarField ScalarField::map(const std::function<double(double)>& fn) const {
  std::vector<double> v(values_.size());
  bool ext = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = fn(values_[i]);
    if (!std::isfinite(v[i])) ext = true;
  }
  return ScalarField(grid_, std::move(v), ext || extended_);
}

ScalarField ScalarField::positive_part() const {
  return map([](double x) { return x > 0.0 ? x : 0.0; });
}

ScalarField ScalarField::negative_part() const {
  return map([](double x) { return x < 0.0 ? -x : 0.0; });
}

ScalarField ScalarField::scaled(double s) const {
  return map([s](double x) { return s * x; });
}

ScalarField ScalarField::plus(double c) const {
  return map([c](double x) { return x + c; });
}

double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }

double ScalarField::max_over(const Mask& mask) const {
  if (mask.size() != values_.size()) throw PreconditionError("max_over: mask size mismatch");
  double m = -kInfinity;
  bool any = false;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (mask[i]) {
      m = std::max(m, values_[i]);
      any = true;
    }
  if (!any) throw PreconditionError("max_over: empty mask");
  return m;
}

double ScalarField::min_over(const Mask& mask) const {
  if (mask.size() != values_.size()) throw PreconditionError("min_over: mask size mismatch");
  double m = kInfinity;
  bool any = false;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (mask[i]) {
      m = std::min(m, values_[i]);
      any = true;
    }
  if (!any) throw PreconditionError("min_over: empty mask");
  return m;
}

ScalarField linear_combination(double alpha, const ScalarField& a, double beta, const ScalarField& b) {
  if (a.grid_ptr() != b.grid_ptr()) throw PreconditionError("field arithmetic on different grids");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = alpha * a[i] + beta * b[i];
  return ScalarField(a.grid_ptr(), std::move(v), a.extended() || b.extended());
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) { return linear_combination(1.0, a, 1.0, b); }
ScalarField operator-(const ScalarField& a, const ScalarField& b) { return linear_combination(1.0, a, -1.0, b); }

// --- Hessian ------------------------------------------------------------------

HessianField::HessianField(GridPtr grid, std::vector<SymMatrix> matrices)
    : grid_(std::move(grid)), matrices_(std::move(matrices)) {
  if (matrices_.size() != grid_->size()) throw PreconditionError("HessianField: matrix count differs from node count");
  spectra_.reserve(matrices_.size());
  for (const auto& m : matrices_) spectra_.push_back(sym_eigenvalues(m));
}

double HessianField::max_spectral_norm() const {
  double s = 0.0;
  for (std::size_t i : grid_->interior_nodes()) {
    const auto& e = spectra_[i];
    s = std::max({s, std::abs(e.min()), std::abs(e.max())});
  }
  return s;
}

HessianField central_hessian(const ScalarField& u) {
  const Grid& g = u.grid();
  const int n = g.dim();
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  std::vector<SymMatrix> mats(g.size(), SymMatrix(n));

  for (std::size_t node : g.interior_nodes()) {
    const Lattice& k = g.lattice(node);
    const double u0 = u[node];
    std::array<std::optional<std::size_t>, 3> fwd{}, bwd{};
    SymMatrix& m = mats[node];
    for (int i = 0; i < n; ++i) {
      fwd[i] = g.neighbor(node, i, 1);
      bwd[i] = g.neighbor(node, i, -1);
      if (!fwd[i] || !bwd[i]) {
        std::ostringstream os;
        os << "central_hessian: interior node " << node << " misses an axis neighbour along " << i;
        throw PreconditionError(os.str());
      }
      m.set(i, i, (u[*fwd[i]] - 2.0 * u0 + u[*bwd[i]]) * inv_h2);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        double sum = 0.0;
        int cells = 0;
        for (int si : {1, -1}) {
          for (int sj : {1, -1}) {
            Lattice c = k;
            c[i] += si;
            c[j] += sj;
            const auto corner = g.find(c);
            if (!corner) continue;
            const std::size_t ai = si > 0 ? *fwd[i] : *bwd[i];
            const std::size_t aj = sj > 0 ? *fwd[j] : *bwd[j];
            sum += si * sj * (u[*corner] - u[ai] - u[aj] + u0);
            ++cells;
          }
        }
        if (cells == 0) {
          std::ostringstream os;
          os << "central_hessian: interior node " << node << " has no lattice cell for cross term (" << i << ","
             << j << ")";
          throw PreconditionError(os.str());
        }
        m.set(i, j, sum / cells * inv_h2);
      }
    }
  }
  return HessianField(u.grid_ptr(), std::move(mats));
}

// --- Norms and measures ---------------------------------------------------------

namespace {

void check_mask(const Grid& g, const Mask& mask, const char* who) {
  if (mask.size() != g.size()) throw PreconditionError(std::string(who) + ": mask size mismatch");
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i] && !g.is_interior(i)) throw PreconditionError(std::string(who) + ": mask must be a subset of interior");
}

}  // namespace

double weighted_lp_norm(const ScalarField& g, const ScalarField& weight, double p, const Mask& mask) {
  if (!(p >= 1.0)) throw PreconditionError("weighted_lp_norm: exponent must be >= 1");
  if (g.grid_ptr() != weight.grid_ptr()) throw PreconditionError("weighted_lp_norm: mismatched grids");
  const Grid& grid = g.grid();
  check_mask(grid, mask, "weighted_lp_norm");

  std::vector<double> prod;
  prod.reserve(mask_count(mask));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!mask[i]) continue;
    const double a = g[i];
    const double w = weight[i];
    if (a == 0.0 || w == 0.0) {
      if (!std::isfinite(a) && !std::isfinite(w)) {
        std::ostringstream os;
        os << "weighted_lp_norm: integrand and weight both non-finite at node " << i;
        throw HypothesisFailure(os.str());
      }
      prod.push_back(0.0);
      continue;
    }
    const double v = std::abs(a * w);
    if (!std::isfinite(v)) {
      if (std::isinf(p)) return kInfinity;
      std::ostringstream os;
      os << "weighted_lp_norm: non-finite integrand at node " << i << " (singular weight with nonzero integrand)";
      throw HypothesisFailure(os.str());
    }
    prod.push_back(v);
  }
  if (prod.empty()) return 0.0;
  const double peak = *std::max_element(prod.begin(), prod.end());
  if (std::isinf(p)) return peak;
  if (peak == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : prod) sum += std::pow(v / peak, p);
  return peak * std::pow(sum * grid.cell_volume(), 1.0 / p);
}

double lp_norm(const ScalarField& g, double p, const Mask& mask) {
  return weighted_lp_norm(g, ScalarField::constant(g.grid_ptr(), 1.0), p, mask);
}

Mask cube_mask(const Grid& g, const Cube& cube) {
  const int n = g.dim();
  if (!(cube.half_side > 0.0)) throw PreconditionError("cube: half side must be positive");
  for (int corner = 0; corner < (1 << n); ++corner) {
    Point x = cube.center;
    for (int i = 0; i < n; ++i) x[i] += ((corner >> i) & 1) ? cube.half_side : -cube.half_side;
    if (!g.contains(x, 1e-12)) throw PreconditionError("cube escapes the grid domain");
  }
  Mask m(g.size(), false);
  const double lim = cube.half_side * (1.0 + 1e-12) + 1e-14;
  for (std::size_t node = 0; node < g.size(); ++node) {
    const Point x = g.position(node);
    bool in = true;
    for (int i = 0; i < n && in; ++i) in = std::abs(x[i] - cube.center[i]) <= lim;
    m[node] = in;
  }
  return m;
}

MeasureReport distribution_function(const ScalarField& u, const Cube& cube, double t) {
  const Grid& g = u.grid();
  const Mask in_cube = cube_mask(g, cube);
  std::size_t count = 0;
  std::size_t total = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!in_cube[i]) continue;
    ++total;
    if (u[i] > t) ++count;
  }
  MeasureReport r;
  r.threshold = t;
  r.cube = cube;
  r.cell_volume = g.cell_volume();
  r.measure = static_cast<double>(count) * g.cell_volume();
  r.cube_measure = static_cast<double>(total) * g.cell_volume();
  return r;
}

}  // namespace abplab
