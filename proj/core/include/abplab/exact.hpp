#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

// Floating-point expansion arithmetic (Dekker/Knuth error-free transforms with
// Shewchuk's zero-eliminating expansion growth) for exact sign evaluation of
// sum_j c_j * u_j with integer c_j.

namespace abplab::exact {

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bv = s - a;
  const double av = s - bv;
  e = (a - av) + (b - bv);
}

inline void two_product(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

/// Adds b to the nonoverlapping expansion `e` (increasing magnitude), dropping zeros.
inline void grow_expansion(std::vector<double>& e, double b) {
  std::size_t out = 0;
  double q = b;
  for (std::size_t i = 0; i < e.size(); ++i) {
    double s, err;
    two_sum(q, e[i], s, err);
    q = s;
    if (err != 0.0) e[out++] = err;
  }
  e.resize(out);
  if (q != 0.0 || e.empty()) e.push_back(q);
}

/// Sign of sum_j c[j] * u[j], exact provided every c[j] is an integer of
/// magnitude below 2^53 and no product overflows.
inline int sign_of_dot(std::span<const std::int64_t> c, std::span<const double> u) {
  double approx = 0.0;
  double mag = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double t = static_cast<double>(c[j]) * u[j];
    approx += t;
    mag += std::abs(t);
  }
  if (mag == 0.0) return 0;
  const double bound = 4.0 * static_cast<double>(c.size() + 1) * std::numeric_limits<double>::epsilon() * mag;
  if (approx > bound) return 1;
  if (approx < -bound) return -1;

  std::vector<double> e;
  e.reserve(2 * c.size() + 1);
  for (std::size_t j = 0; j < c.size(); ++j) {
    double p, err;
    two_product(static_cast<double>(c[j]), u[j], p, err);
    grow_expansion(e, err);
    grow_expansion(e, p);
  }
  for (std::size_t i = e.size(); i-- > 0;)
    if (e[i] != 0.0) return e[i] > 0.0 ? 1 : -1;
  return 0;
}

/// Exact determinant of a small integer matrix (row-major, m <= 4).
inline std::int64_t int_det(const std::int64_t* a, int m) {
  if (m == 1) return a[0];
  if (m == 2) return a[0] * a[3] - a[1] * a[2];
  std::int64_t det = 0;
  std::int64_t minor[9];
  for (int col = 0; col < m; ++col) {
    int w = 0;
    for (int r = 1; r < m; ++r)
      for (int c = 0; c < m; ++c)
        if (c != col) minor[w++] = a[r * m + c];
    const std::int64_t sub = int_det(minor, m - 1);
    det += (col % 2 == 0 ? 1 : -1) * a[col] * sub;
  }
  return det;
}

}  // namespace abplab::exact
