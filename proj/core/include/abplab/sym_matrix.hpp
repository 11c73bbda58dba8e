#pragma once

#include <array>
#include <cmath>
#include <span>

namespace abplab {

/// Point or vector in R^n, n <= 3. Unused trailing components are zero.
using Point = std::array<double, 3>;

inline double dot(const Point& a, const Point& b, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Point& a, int n) { return std::sqrt(dot(a, a, n)); }

/// Real symmetric n x n matrix, n <= 3, stored densely. Symmetry holds by
/// construction: the only mutator writes both triangles.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int n) : n_(n) {}

  static SymMatrix zero(int n) { return SymMatrix(n); }
  static SymMatrix identity(int n);
  static SymMatrix diagonal(std::span<const double> d);
  /// Outer-product symmetrisation a (x) b + b (x) a.
  static SymMatrix sym_outer(const Point& a, const Point& b, int n);
  static SymMatrix outer(const Point& a, int n);
  /// Builds from a row-major n*n array. Throws PreconditionError when the
  /// input is asymmetric beyond 1e-12 relative to its largest entry.
  static SymMatrix from_rows(int n, std::span<const double> rows);

  int dim() const noexcept { return n_; }
  double operator()(int i, int j) const noexcept { return a_[i * 3 + j]; }
  void set(int i, int j, double v) noexcept {
    a_[i * 3 + j] = v;
    a_[j * 3 + i] = v;
  }

  double trace() const noexcept;
  double determinant() const noexcept;
  double max_abs_entry() const noexcept;
  double frobenius() const noexcept;
  /// Quadratic form <M a, a>.
  double quadratic_form(const Point& a) const noexcept;

  SymMatrix& operator+=(const SymMatrix& o) noexcept;
  SymMatrix& operator-=(const SymMatrix& o) noexcept;
  SymMatrix& operator*=(double s) noexcept;
  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }
  friend SymMatrix operator-(SymMatrix a) { return a *= -1.0; }

 private:
  int n_ = 0;
  std::array<double, 9> a_{};
};

/// Eigenvalues sorted ascending; ties are kept.
struct Spectrum {
  int n = 0;
  std::array<double, 3> values{};

  std::span<const double> view() const noexcept { return {values.data(), static_cast<std::size_t>(n)}; }
  double min() const noexcept { return values[0]; }
  double max() const noexcept { return values[n - 1]; }
  double sum() const noexcept;
  double product() const noexcept;
};

/// Eigenvalues of a symmetric matrix. Closed form for n = 1, 2; the
/// trigonometric cubic solution for n = 3 with a cyclic Jacobi fallback when
/// two roots nearly coincide.
Spectrum sym_eigenvalues(const SymMatrix& m);

/// Cyclic Jacobi iteration; exposed for tests and as the n = 3 fallback.
Spectrum jacobi_eigenvalues(const SymMatrix& m);

}  // namespace abplab
