#include "abplab/field_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "abplab/error.hpp"

namespace abplab {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_values(std::ostream& os, const Grid& g, const std::vector<double>& v) {
  os << "abplab-field v1 dim=" << g.dim() << " shape=" << to_string(g.shape()) << " h=" << g17(g.spacing())
     << " count=" << g.size() << '\n';
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point x = g.position(i);
    for (int a = 0; a < g.dim(); ++a) os << g17(x[a]) << ' ';
    os << g17(v[i]) << '\n';
  }
}

}  // namespace

void write_field(std::ostream& os, const ScalarField& u) {
  write_values(os, u.grid(), std::vector<double>(u.values().begin(), u.values().end()));
}

void write_field_file(const std::string& path, const ScalarField& u) {
  std::ofstream os(path);
  if (!os) throw PreconditionError("cannot open " + path + " for writing");
  write_field(os, u);
}

void write_mask(std::ostream& os, const Grid& g, const Mask& m) {
  if (m.size() != g.size()) throw PreconditionError("write_mask: size mismatch");
  std::vector<double> v(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) v[i] = m[i] ? 1.0 : 0.0;
  write_values(os, g, v);
}

FieldSnapshot read_field(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw PreconditionError("field snapshot: empty input");
  std::istringstream hs(line);
  std::string magic, version;
  hs >> magic >> version;
  if (magic != "abplab-field") throw PreconditionError("field snapshot: missing abplab-field header");
  if (version != "v1") throw PreconditionError("field snapshot: unsupported version '" + version + "'");

  std::map<std::string, std::string> kv;
  std::string tok;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw PreconditionError("field snapshot: bad header token '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  for (const char* key : {"dim", "shape", "h", "count"})
    if (!kv.count(key)) throw PreconditionError(std::string("field snapshot: header lacks ") + key);

  FieldSnapshot s;
  std::size_t count = 0;
  try {
    s.dim = std::stoi(kv["dim"]);
    s.h = std::stod(kv["h"]);
    count = std::stoul(kv["count"]);
  } catch (const std::exception&) {
    throw PreconditionError("field snapshot: non-numeric header value");
  }
  if (s.dim < 1 || s.dim > 3) throw PreconditionError("field snapshot: dim must be 1, 2 or 3");
  if (kv["shape"] == "box")
    s.shape = Shape::box;
  else if (kv["shape"] == "ball")
    s.shape = Shape::ball;
  else
    throw PreconditionError("field snapshot: unknown shape '" + kv["shape"] + "'");

  s.positions.reserve(count);
  s.values.reserve(count);
  while (s.values.size() < count && std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Point x{0.0, 0.0, 0.0};
    double v = 0.0;
    for (int a = 0; a < s.dim; ++a) ls >> x[a];
    ls >> v;
    if (!ls) throw PreconditionError("field snapshot: malformed line '" + line + "'");
    s.positions.push_back(x);
    s.values.push_back(v);
  }
  if (s.values.size() != count) throw PreconditionError("field snapshot: fewer lines than count");
  return s;
}

FieldSnapshot read_field_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw PreconditionError("cannot open " + path);
  return read_field(is);
}

ScalarField snapshot_to_field(const FieldSnapshot& s, GridPtr grid) {
  if (s.dim != grid->dim()) throw PreconditionError("snapshot dimension differs from grid");
  std::vector<double> v(grid->size(), 0.0);
  std::vector<bool> seen(grid->size(), false);
  const double h = grid->spacing();
  const Point origin = grid->position(Lattice{0, 0, 0});
  for (std::size_t j = 0; j < s.values.size(); ++j) {
    Lattice k{0, 0, 0};
    for (int a = 0; a < s.dim; ++a) {
      const double t = (s.positions[j][a] - origin[a]) / h;
      k[a] = static_cast<int>(std::lround(t));
      if (std::abs(t - k[a]) > 1e-3) throw PreconditionError("snapshot node off the grid lattice");
    }
    const auto node = grid->find(k);
    if (!node) throw PreconditionError("snapshot node outside the grid");
    v[*node] = s.values[j];
    seen[*node] = true;
  }
  for (bool b : seen)
    if (!b) throw PreconditionError("snapshot does not cover every grid node");
  bool ext = false;
  for (double x : v) ext = ext || !std::isfinite(x);
  return ScalarField(std::move(grid), std::move(v), ext);
}

}  // namespace abplab
