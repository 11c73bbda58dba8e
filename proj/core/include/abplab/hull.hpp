#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "abplab/grid.hpp"

namespace abplab {

/// Points (k, u) in R^{n+1} with integer lattice coordinates k and real heights u.
struct LiftedPoints {
  int n = 1;
  std::span<const Lattice> lattice;
  std::span<const double> value;

  std::size_t size() const noexcept { return value.size(); }
};

/// Integer coefficients c with det[k_j, u_j, 1]_{j = 0..n+1} = sum_j c_j u_j.
void orientation_coefficients(const LiftedPoints& pts, std::span<const std::size_t> idx, std::int64_t* c);

/// Exact sign of det[k_j, u_j, 1] over the n+2 points `idx`.
int lifted_orientation(const LiftedPoints& pts, std::span<const std::size_t> idx);

using FacetVertices = std::array<std::size_t, 4>;

struct UpperHull {
  int n = 0;
  /// Upper facets of the lifted hull (outward normal with positive height
  /// component), n+1 point indices each.
  std::vector<FacetVertices> facets;
  /// Every lifted point lies on one hyperplane; `facets` then holds the single
  /// base simplex spanning it.
  bool affine = false;
};

/// Upper hull of lifted lattice points: monotone chain for n = 1, an
/// incremental quickhull with exact orientation predicates for n = 2, 3.
/// Throws PreconditionError if fewer than n+1 lattice points are affinely
/// independent.
UpperHull upper_hull(const LiftedPoints& pts);

}  // namespace abplab
