#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rdacert/errors.hpp"
#include "rdacert/poly.hpp"

namespace rdacert {

/// Dense row-major matrix over a commutative ring of polynomials
/// (RealPoly, ComplexPoly or BivariatePoly).
template <typename R>
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols) {
    if (rows <= 0 || cols <= 0) throw InputError("PolyMatrix: empty shape");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  R& operator()(int i, int j) { return entries_[index(i, j)]; }
  const R& operator()(int i, int j) const { return entries_[index(i, j)]; }

  /// Leading principal k x k block.
  PolyMatrix leading_block(int k) const {
    PolyMatrix out(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) out(i, j) = (*this)(i, j);
    }
    return out;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw ShapeMismatch("PolyMatrix product shape");
    PolyMatrix out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
      for (int j = 0; j < b.cols_; ++j) {
        R acc{};
        for (int k = 0; k < a.cols_; ++k) acc = acc + a(i, k) * b(k, j);
        out(i, j) = std::move(acc);
      }
    }
    return out;
  }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * cols_ + j;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<R> entries_;
};

using RealPolyMatrix = PolyMatrix<RealPoly>;
using ComplexPolyMatrix = PolyMatrix<ComplexPoly>;
using BivariatePolyMatrix = PolyMatrix<BivariatePoly>;

template <typename R>
R ring_one();
template <>
inline RealPoly ring_one<RealPoly>() { return RealPoly::constant(1.0); }
template <>
inline ComplexPoly ring_one<ComplexPoly>() { return ComplexPoly::constant(1.0); }
template <>
inline BivariatePoly ring_one<BivariatePoly>() {
  return BivariatePoly::constant(ComplexPoly::constant(1.0));
}

/// Division-free determinant by Laplace expansion along rows, memoized over
/// column subsets (2^n * n ring operations). Works over any commutative ring.
template <typename R>
R det_cofactor(const PolyMatrix<R>& m) {
  if (!m.square()) throw NonSquare("determinant of a non-square matrix");
  const int n = m.rows();
  if (n > 20) throw InputError("det_cofactor: matrix too large");
  // minor[mask] = det of the submatrix formed by the last popcount(mask)
  // rows and the columns in mask.
  const std::uint32_t full = (1u << n) - 1u;
  std::vector<R> minor(static_cast<std::size_t>(full) + 1);
  minor[0] = ring_one<R>();
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const int k = __builtin_popcount(mask);
    const int row = n - k;
    R acc{};
    int sign_pos = 0;
    for (int c = 0; c < n; ++c) {
      if (!(mask & (1u << c))) continue;
      const R& sub = minor[mask & ~(1u << c)];
      if (!m(row, c).is_zero() && !sub.is_zero()) {
        R term = m(row, c) * sub;
        acc = (sign_pos % 2 == 0) ? acc + term : acc - term;
      }
      ++sign_pos;
    }
    minor[mask] = std::move(acc);
  }
  return minor[full];
}

namespace detail {

// Quotient of a division known to be exact in exact arithmetic, found by
// least squares on the convolution system den * q = num. Long division
// amplifies rounding whenever the divisor's leading coefficient is small.
template <typename T>
Polynomial<T> exact_quotient(const Polynomial<T>& num, const Polynomial<T>& den) {
  const int qd = num.degree() - den.degree();
  if (num.is_zero() || qd < 0) return {};
  if (den.degree() == 0) return (T(1) / den[0]) * num;
  using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
  const int rows = num.degree() + 1;
  Mat conv = Mat::Zero(rows, qd + 1);
  for (int c = 0; c <= qd; ++c) {
    for (int k = 0; k <= den.degree(); ++k) conv(c + k, c) = den[k];
  }
  Vec rhs(rows);
  for (int k = 0; k < rows; ++k) rhs(k) = num[k];
  const Vec q = conv.colPivHouseholderQr().solve(rhs);
  return Polynomial<T>(std::vector<T>(q.data(), q.data() + q.size()));
}

}  // namespace detail

/// Fraction-free Bareiss elimination with magnitude-based row pivoting. Each
/// intermediate division is exact in exact arithmetic; the floating
/// remainder is discarded.
template <typename T>
Polynomial<T> det_bareiss(const PolyMatrix<Polynomial<T>>& m) {
  using P = Polynomial<T>;
  if (!m.square()) throw NonSquare("determinant of a non-square matrix");
  const int n = m.rows();
  std::vector<std::vector<P>> a(n, std::vector<P>(n));
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      a[i][j] = m(i, j);
      scale = std::max(scale, a[i][j].max_abs_coeff());
    }
  }
  if (scale == 0.0) return {};
  bool negate = false;
  P prev = P::constant(T(1));
  for (int k = 0; k < n - 1; ++k) {
    int pivot = -1;
    double best = 0.0;
    for (int r = k; r < n; ++r) {
      const double mag = a[r][k].max_abs_coeff();
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (pivot < 0) return {};
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        const P lhs = a[k][k] * a[i][j];
        const P rhs = a[i][k] * a[k][j];
        const double ref = std::max(lhs.max_abs_coeff(), rhs.max_abs_coeff());
        const P num = (lhs - rhs).truncated_below(kCoefficientTruncation * ref);
        a[i][j] = detail::exact_quotient(num, prev);
      }
      a[i][k] = P{};
    }
    prev = a[k][k];
  }
  P det = a[n - 1][n - 1];
  return negate ? -det : det;
}

/// Determinant of a complex polynomial matrix: cofactor expansion for
/// n <= 3, Bareiss otherwise. The result is truncated at
/// kCoefficientTruncation relative to its largest coefficient.
ComplexPoly det(const ComplexPolyMatrix& m);
RealPoly det(const RealPolyMatrix& m);

/// Entry-wise evaluation at zeta.
Eigen::MatrixXcd evaluate(const ComplexPolyMatrix& m, Complex zeta);

}  // namespace rdacert
