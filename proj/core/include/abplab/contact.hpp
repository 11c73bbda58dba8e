#pragma once

#include <optional>
#include <span>
#include <vector>

#include "abplab/grid.hpp"

namespace abplab {

/// Least concave majorant of a grid function together with the upper-hull
/// facets that cover each node.
struct Envelope {
  ScalarField value;
  /// Gradient (domain units) of every upper facet.
  std::vector<Point> facet_gradient;
  /// CSR list of the facets whose projection contains each node.
  std::vector<std::size_t> cover_offset;
  std::vector<std::size_t> cover_ids;
  bool affine = false;

  std::span<const std::size_t> covering(std::size_t node) const {
    return {cover_ids.data() + cover_offset[node], cover_offset[node + 1] - cover_offset[node]};
  }
};

Envelope envelope_data(const ScalarField& u);
/// Smallest concave grid function >= u, from the upper hull of (x, u(x)).
ScalarField concave_envelope(const ScalarField& u);

/// 1e-8 * (1 + osc u).
double default_contact_tol(const ScalarField& u);

/// Interior nodes of an upper contact set together with supporting slopes.
struct ContactMask {
  GridPtr grid;
  Mask member;
  /// Witness slope p per node (zero vector for non-members).
  std::vector<Point> slope;
  double tol = 0.0;
  /// Slope bound r; infinity for the unrestricted set.
  double radius = kInfinity;

  std::size_t count() const { return mask_count(member); }
};

/// Gamma+(u): interior nodes with u >= envelope - tol. The witness is the
/// minimum-norm element of the envelope's superdifferential at the node.
ContactMask upper_contact_set(const ScalarField& u, std::optional<double> tol = std::nullopt);
/// Gamma+_r(u): members whose superdifferential meets the closed ball of radius r.
ContactMask slope_restricted_contact(const ScalarField& u, double r, std::optional<double> tol = std::nullopt);

/// max over members x and all nodes y of u(y) - u(x) - p.(y - x) - tol; a
/// value <= 0 certifies every witness.
double witness_defect(const ContactMask& m, const ScalarField& u);

/// Minimum-norm point of the convex hull of `pts` in R^n (Wolfe's method).
Point min_norm_point(std::span<const Point> pts, int n);

struct StabilityEntry {
  double sup_perturbation = 0.0;
  std::size_t members = 0;
  /// Members of Gamma+(u + delta) outside {u >= env(u) - 2 |delta| - tol}.
  std::size_t outside = 0;
  bool contained = true;
};

struct StabilityReport {
  std::vector<StabilityEntry> entries;
  bool all_contained = true;
};

StabilityReport contact_stability_probe(const ScalarField& u, const std::vector<ScalarField>& perturbations,
                                        std::optional<double> tol = std::nullopt);

}  // namespace abplab
