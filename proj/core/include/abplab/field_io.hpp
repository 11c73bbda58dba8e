#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "abplab/grid.hpp"

namespace abplab {

/// Plain-text node dump: a header line
///   abplab-field v1 dim=<n> shape=<box|ball> h=<spacing> count=<N>
/// followed by N lines "x1 [x2 [x3]] value" at 17 significant digits.
void write_field(std::ostream& os, const ScalarField& u);
void write_field_file(const std::string& path, const ScalarField& u);

/// Masks serialize as fields with values in {0, 1}.
void write_mask(std::ostream& os, const Grid& g, const Mask& m);

struct FieldSnapshot {
  int dim = 0;
  Shape shape = Shape::box;
  double h = 0.0;
  std::vector<Point> positions;
  std::vector<double> values;
};

/// Parses a snapshot. Throws PreconditionError on an unknown version tag, a
/// malformed header or a line count that disagrees with `count`.
FieldSnapshot read_field(std::istream& is);
FieldSnapshot read_field_file(const std::string& path);

/// Rebinds a snapshot onto an existing grid, matching nodes by position
/// (within h/1000). Throws when a node is missing.
ScalarField snapshot_to_field(const FieldSnapshot& s, GridPtr grid);

}  // namespace abplab
