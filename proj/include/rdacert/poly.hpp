#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace rdacert {

using Complex = std::complex<double>;

// Relative threshold used when trimming noise produced by determinant
// expansion.
inline constexpr double kCoefficientTruncation = 1e-12;

/// Univariate polynomial with coefficients in ascending degree order
/// (coeffs()[k] multiplies x^k).
///
/// Values are kept canonical: the leading coefficient is nonzero, and the
/// zero polynomial is the empty coefficient sequence with degree() == -1.
/// T is double (RealPoly) or std::complex<double> (ComplexPoly).
template <typename T>
class Polynomial {
 public:
  static constexpr int kZeroDegree = -1;

  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }
  Polynomial(std::initializer_list<T> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial constant(T c) { return Polynomial(std::vector<T>{c}); }
  static Polynomial monomial(int degree, T c = T(1)) {
    std::vector<T> v(static_cast<std::size_t>(degree) + 1, T(0));
    v.back() = c;
    return Polynomial(std::move(v));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<T>& coeffs() const { return coeffs_; }

  /// Coefficient of x^k; zero beyond the degree.
  T operator[](int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : T(0);
  }
  T leading() const { return coeffs_.empty() ? T(0) : coeffs_.back(); }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const T& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  /// Horner evaluation. U may be wider than T (e.g. a real polynomial
  /// evaluated at a complex point).
  template <typename U>
  auto operator()(U x) const -> decltype(T() * U()) {
    using R = decltype(T() * U());
    R acc = R(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * x + R(*it);
    }
    return acc;
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<T> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
      d[k - 1] = coeffs_[k] * static_cast<double>(k);
    }
    return Polynomial(std::move(d));
  }

  /// p(scale * x + shift), expanded by repeated Horner steps.
  Polynomial compose_affine(T scale, T shift) const {
    const Polynomial lin{shift, scale};
    Polynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * lin + Polynomial::constant(*it);
    }
    return acc;
  }

  /// Zeroes every coefficient whose magnitude is at most rel * max|c| and
  /// re-canonicalizes. For complex coefficients the real and imaginary parts
  /// are tested separately against the same reference.
  Polynomial truncated(double rel = kCoefficientTruncation) const {
    return truncated_below(rel * max_abs_coeff());
  }
  /// Same as truncated() with an absolute cutoff.
  Polynomial truncated_below(double cutoff) const {
    std::vector<T> v = coeffs_;
    for (T& c : v) c = chop(c, cutoff);
    return Polynomial(std::move(v));
  }

  Polynomial operator-() const {
    std::vector<T> v = coeffs_;
    for (T& c : v) c = -c;
    return Polynomial(std::move(v));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> v(std::max(a.coeffs_.size(), b.coeffs_.size()), T(0));
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) v[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) v[k] += b.coeffs_[k];
    return Polynomial(std::move(v));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + (-b);
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> v(a.coeffs_.size() + b.coeffs_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        v[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return Polynomial(std::move(v));
  }
  friend Polynomial operator*(T s, const Polynomial& p) {
    std::vector<T> v = p.coeffs_;
    for (T& c : v) c *= s;
    return Polynomial(std::move(v));
  }
  friend Polynomial operator*(const Polynomial& p, T s) { return s * p; }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Euclidean division: returns (quotient, remainder) with
  /// deg(remainder) < deg(divisor). The divisor must be nonzero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;

 private:
  static T chop(T c, double cutoff) {
    if constexpr (std::is_same_v<T, Complex>) {
      return {std::abs(c.real()) <= cutoff ? 0.0 : c.real(),
              std::abs(c.imag()) <= cutoff ? 0.0 : c.imag()};
    } else {
      return std::abs(c) <= cutoff ? T(0) : c;
    }
  }

  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == T(0)) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

using RealPoly = Polynomial<double>;
using ComplexPoly = Polynomial<Complex>;

template <typename T>
std::pair<Polynomial<T>, Polynomial<T>> Polynomial<T>::divmod(
    const Polynomial& divisor) const {
  const int dd = divisor.degree();
  if (dd < 0) throw std::domain_error("polynomial division by zero");
  if (degree() < dd) return {Polynomial{}, *this};
  std::vector<T> rem = coeffs_;
  std::vector<T> quot(static_cast<std::size_t>(degree() - dd) + 1, T(0));
  const T lead = divisor.leading();
  for (int k = degree() - dd; k >= 0; --k) {
    const T q = rem[k + dd] / lead;
    quot[k] = q;
    for (int j = 0; j <= dd; ++j) rem[k + j] -= q * divisor.coeffs_[j];
    rem[k + dd] = T(0);
  }
  rem.resize(static_cast<std::size_t>(dd));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

/// Real and imaginary parts of a complex polynomial.
RealPoly real_part(const ComplexPoly& p);
RealPoly imag_part(const ComplexPoly& p);
ComplexPoly to_complex(const RealPoly& p);
/// re + j*im.
ComplexPoly make_complex(const RealPoly& re, const RealPoly& im);

/// Cauchy bound 1 + max|c_k| / |c_lead| on the magnitude of every root.
/// Returns 0 for constants.
double cauchy_bound(const RealPoly& p);

/// Human-readable rendering, highest degree first ("7 z^2 + 0.184").
std::string to_string(const RealPoly& p, const std::string& var = "z");

/// Polynomial in s whose coefficients are complex polynomials in zeta:
/// s_coeffs()[k](zeta) multiplies s^k. Forms a commutative ring, which is
/// all the determinant routines need.
class BivariatePoly {
 public:
  BivariatePoly() = default;
  explicit BivariatePoly(std::vector<ComplexPoly> s_coeffs)
      : s_coeffs_(std::move(s_coeffs)) {
    trim();
  }
  static BivariatePoly constant(ComplexPoly c) {
    return BivariatePoly(std::vector<ComplexPoly>{std::move(c)});
  }

  int degree_s() const { return static_cast<int>(s_coeffs_.size()) - 1; }
  bool is_zero() const { return s_coeffs_.empty(); }
  const std::vector<ComplexPoly>& s_coeffs() const { return s_coeffs_; }
  ComplexPoly coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(s_coeffs_.size())) ? s_coeffs_[k]
                                                             : ComplexPoly{};
  }

  Complex operator()(Complex zeta, Complex s) const;

  friend BivariatePoly operator+(const BivariatePoly& a,
                                 const BivariatePoly& b);
  friend BivariatePoly operator-(const BivariatePoly& a,
                                 const BivariatePoly& b);
  friend BivariatePoly operator*(const BivariatePoly& a,
                                 const BivariatePoly& b);
  BivariatePoly operator-() const;

 private:
  void trim() {
    while (!s_coeffs_.empty() && s_coeffs_.back().is_zero()) {
      s_coeffs_.pop_back();
    }
  }
  std::vector<ComplexPoly> s_coeffs_;
};

}  // namespace rdacert
