#include "abplab/sym_matrix.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "abplab/error.hpp"

namespace abplab {

SymMatrix SymMatrix::identity(int n) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  SymMatrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m.set(i, i, d[i]);
  return m;
}

SymMatrix SymMatrix::sym_outer(const Point& a, const Point& b, int n) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, a[i] * b[j] + b[i] * a[j]);
  return m;
}

SymMatrix SymMatrix::outer(const Point& a, int n) {
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, a[i] * a[j]);
  return m;
}

SymMatrix SymMatrix::from_rows(int n, std::span<const double> rows) {
  if (n < 1 || n > 3 || rows.size() != static_cast<std::size_t>(n * n))
    throw PreconditionError("SymMatrix::from_rows: expected n*n entries with n in {1,2,3}");
  double scale = 0.0;
  for (double v : rows) scale = std::max(scale, std::abs(v));
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double aij = rows[i * n + j];
      const double aji = rows[j * n + i];
      if (std::abs(aij - aji) > 1e-12 * scale) {
        std::ostringstream os;
        os << "asymmetric input: entry (" << i << "," << j << ") = " << aij << " vs (" << j << "," << i
           << ") = " << aji;
        throw PreconditionError(os.str());
      }
      m.set(i, j, 0.5 * (aij + aji));
    }
  }
  return m;
}

double SymMatrix::trace() const noexcept {
  double t = 0.0;
  for (int i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double SymMatrix::determinant() const noexcept {
  const auto& m = *this;
  switch (n_) {
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default:
      return 1.0;
  }
}

double SymMatrix::max_abs_entry() const noexcept {
  double s = 0.0;
  for (double v : a_) s = std::max(s, std::abs(v));
  return s;
}

double SymMatrix::frobenius() const noexcept {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

double SymMatrix::quadratic_form(const Point& a) const noexcept {
  double s = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * a[i] * a[j];
  return s;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) noexcept {
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) noexcept {
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) noexcept {
  for (double& v : a_) v *= s;
  return *this;
}

double Spectrum::sum() const noexcept {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += values[i];
  return s;
}

double Spectrum::product() const noexcept {
  double p = 1.0;
  for (int i = 0; i < n; ++i) p *= values[i];
  return p;
}

namespace {

Spectrum sorted(int n, std::array<double, 3> v) {
  std::sort(v.begin(), v.begin() + n);
  return Spectrum{n, v};
}

}  // namespace

Spectrum jacobi_eigenvalues(const SymMatrix& m) {
  const int n = m.dim();
  std::array<std::array<double, 3>, 3> a{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m(i, j);

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off == 0.0) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::array<double, 3> d{};
  for (int i = 0; i < n; ++i) d[i] = a[i][i];
  return sorted(n, d);
}

Spectrum sym_eigenvalues(const SymMatrix& m) {
  const int n = m.dim();
  if (n == 1) return Spectrum{1, {m(0, 0), 0.0, 0.0}};
  if (n == 2) {
    const double mean = 0.5 * (m(0, 0) + m(1, 1));
    const double rad = std::hypot(0.5 * (m(0, 0) - m(1, 1)), m(0, 1));
    return Spectrum{2, {mean - rad, mean + rad, 0.0}};
  }

  const double p1 = m(0, 1) * m(0, 1) + m(0, 2) * m(0, 2) + m(1, 2) * m(1, 2);
  if (p1 == 0.0) return sorted(3, {m(0, 0), m(1, 1), m(2, 2)});

  const double q = m.trace() / 3.0;
  const double d0 = m(0, 0) - q;
  const double d1 = m(1, 1) - q;
  const double d2 = m(2, 2) - q;
  const double p = std::sqrt((d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1) / 6.0);

  SymMatrix b = m;
  for (int i = 0; i < 3; ++i) b.set(i, i, m(i, i) - q);
  b *= 1.0 / p;
  const double r = std::clamp(0.5 * b.determinant(), -1.0, 1.0);

  // acos loses accuracy as |r| -> 1 (two eigenvalues merging); the error in
  // the angle scales like eps / sqrt(1 - r^2).
  if (1.0 - r * r < 1e-6) return jacobi_eigenvalues(m);

  const double phi = std::acos(r) / 3.0;
  const double hi = q + 2.0 * p * std::cos(phi);
  const double lo = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double mid = 3.0 * q - hi - lo;
  return sorted(3, {lo, mid, hi});
}

}  // namespace abplab
