#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abplab/sym_matrix.hpp"

namespace abplab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Shape { box, ball };

std::string to_string(Shape s);

/// Integer lattice coordinates of a node. Unused components are zero.
using Lattice = std::array<int, 3>;

/// Description of a uniform Cartesian grid over a box or a centred ball.
struct GridSpec {
  int dim = 2;
  Shape shape = Shape::ball;
  double h = 1.0 / 16.0;
  /// Ball radius (ball shape only).
  double radius = 1.0;
  /// Box bounds per axis (box shape only).
  Point lo{-1.0, -1.0, -1.0};
  Point hi{1.0, 1.0, 1.0};

  static GridSpec ball(int dim, double h, double radius = 1.0);
  static GridSpec box(int dim, double h, double a = -1.0, double b = 1.0);
};

/// Uniform lattice restricted to a box or ball. Every node is exactly one of
/// interior or boundary. For balls a node is boundary when the closed ball of
/// radius h around it is not contained in the open domain, i.e. R - |x| < h.
class Grid {
 public:
  /// Throws PreconditionError for dim outside {1,2,3}, h <= 0, h larger than
  /// the domain diameter, or a box side not divisible by h (1e-9 relative).
  static std::shared_ptr<const Grid> build(const GridSpec& spec);

  const GridSpec& spec() const noexcept { return spec_; }
  int dim() const noexcept { return spec_.dim; }
  double spacing() const noexcept { return spec_.h; }
  Shape shape() const noexcept { return spec_.shape; }
  std::size_t size() const noexcept { return lattice_.size(); }

  const Lattice& lattice(std::size_t node) const { return lattice_[node]; }
  Point position(std::size_t node) const;
  Point position(const Lattice& k) const;
  bool is_interior(std::size_t node) const { return interior_[node] != 0; }
  bool is_boundary(std::size_t node) const { return interior_[node] == 0; }
  std::span<const std::size_t> interior_nodes() const noexcept { return interior_list_; }
  std::span<const std::size_t> boundary_nodes() const noexcept { return boundary_list_; }

  std::optional<std::size_t> find(const Lattice& k) const;
  /// Neighbour of `node` shifted by `steps` lattice units along `axis`.
  std::optional<std::size_t> neighbor(std::size_t node, int axis, int steps) const;

  double cell_volume() const noexcept { return cell_volume_; }
  /// Measure of the continuous domain boundary (perimeter in 2D, point count in 1D).
  double surface_area() const noexcept;
  double domain_volume() const noexcept;
  double diameter() const noexcept;
  /// Membership of a point in the closed continuous domain.
  bool contains(const Point& x, double slack = 1e-12) const;

  /// Lattice bounding box (inclusive) used by the dense index.
  const Lattice& lattice_min() const noexcept { return kmin_; }
  const Lattice& lattice_max() const noexcept { return kmax_; }

 private:
  Grid() = default;

  GridSpec spec_;
  Point origin_{};
  Lattice kmin_{}, kmax_{};
  std::array<std::size_t, 3> extent_{1, 1, 1};
  std::vector<Lattice> lattice_;
  std::vector<char> interior_;
  std::vector<std::size_t> interior_list_;
  std::vector<std::size_t> boundary_list_;
  std::vector<long> dense_index_;
  double cell_volume_ = 0.0;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Per-node boolean selection.
using Mask = std::vector<bool>;

Mask interior_mask(const Grid& g);
Mask boundary_mask(const Grid& g);
/// Interior nodes with |x - center| <= radius (+ slack).
Mask ball_mask(const Grid& g, const Point& center, double radius, bool interior_only = true);
Mask mask_and(const Mask& a, const Mask& b);
std::size_t mask_count(const Mask& m);

/// Real values on every node of a grid. Values are finite unless the field is
/// flagged extended-real, in which case +-infinity is allowed (never NaN).
class ScalarField {
 public:
  ScalarField(GridPtr grid, std::vector<double> values, bool extended = false);

  static ScalarField constant(GridPtr grid, double value);
  static ScalarField sample(GridPtr grid, const std::function<double(const Point&)>& fn, bool extended = false);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t node) const { return values_[node]; }
  bool extended() const noexcept { return extended_; }
  std::size_t size() const noexcept { return values_.size(); }

  ScalarField map(const std::function<double(double)>& fn) const;
  ScalarField positive_part() const;
  ScalarField negative_part() const;
  ScalarField scaled(double s) const;
  ScalarField plus(double c) const;

  double max() const;
  double min() const;
  /// Extremes over the nodes selected by `mask`; throws on an empty mask.
  double max_over(const Mask& mask) const;
  double min_over(const Mask& mask) const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
  bool extended_ = false;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField linear_combination(double alpha, const ScalarField& a, double beta, const ScalarField& b);

/// Discrete Hessian on interior nodes (boundary entries are the zero matrix)
/// together with the sorted eigenvalues of each matrix.
class HessianField {
 public:
  HessianField(GridPtr grid, std::vector<SymMatrix> matrices);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const SymMatrix& matrix(std::size_t node) const { return matrices_[node]; }
  const Spectrum& eigenvalues(std::size_t node) const { return spectra_[node]; }

  /// max over interior nodes of max |e_i|.
  double max_spectral_norm() const;

 private:
  GridPtr grid_;
  std::vector<SymMatrix> matrices_;
  std::vector<Spectrum> spectra_;
};

/// Central second differences (3-point) and cross differences. Cross terms
/// average the one-sided cell differences of every lattice cell around the
/// node that lies inside the grid; with all four cells present this is the
/// usual 4-point cross difference. Exact on polynomials of degree <= 2.
/// Throws PreconditionError when an interior node lacks an axis neighbour or
/// every cell for some cross term.
HessianField central_hessian(const ScalarField& u);

/// (sum over masked cells of |g * w|^p * h^n)^(1/p); p = infinity gives the
/// masked sup of |g * w|. A cell where w is non-finite but g == 0 contributes
/// zero. Any other non-finite product throws HypothesisFailure for p < inf.
double weighted_lp_norm(const ScalarField& g, const ScalarField& weight, double p, const Mask& mask);
/// Unweighted convenience overload.
double lp_norm(const ScalarField& g, double p, const Mask& mask);

/// Axis-parallel open cube K_r(z) of half side r.
struct Cube {
  Point center{};
  double half_side = 0.0;
};

struct MeasureReport {
  double threshold = 0.0;
  double measure = 0.0;
  Cube cube;
  double cell_volume = 0.0;
  /// Discrete measure of the cube (node count times cell volume).
  double cube_measure = 0.0;
};

/// Mask of grid nodes lying in the cube; throws PreconditionError if the cube
/// is not contained in the domain.
Mask cube_mask(const Grid& g, const Cube& cube);

/// mu_t = |{x in K0 : u(x) > t}| by node counting.
MeasureReport distribution_function(const ScalarField& u, const Cube& cube, double t);

}  // namespace abplab
