#include "rdacert/poly.hpp"

#include <sstream>

namespace rdacert {

RealPoly real_part(const ComplexPoly& p) {
  std::vector<double> v;
  v.reserve(p.coeffs().size());
  for (const Complex& c : p.coeffs()) v.push_back(c.real());
  return RealPoly(std::move(v));
}

RealPoly imag_part(const ComplexPoly& p) {
  std::vector<double> v;
  v.reserve(p.coeffs().size());
  for (const Complex& c : p.coeffs()) v.push_back(c.imag());
  return RealPoly(std::move(v));
}

ComplexPoly to_complex(const RealPoly& p) {
  return ComplexPoly(std::vector<Complex>(p.coeffs().begin(), p.coeffs().end()));
}

ComplexPoly make_complex(const RealPoly& re, const RealPoly& im) {
  const int n = std::max(re.degree(), im.degree()) + 1;
  std::vector<Complex> v(static_cast<std::size_t>(std::max(n, 0)));
  for (int k = 0; k < n; ++k) v[k] = Complex(re[k], im[k]);
  return ComplexPoly(std::move(v));
}

double cauchy_bound(const RealPoly& p) {
  if (p.degree() <= 0) return 0.0;
  const double lead = std::abs(p.leading());
  double m = 0.0;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, std::abs(p[k]));
  return 1.0 + m / lead;
}

std::string to_string(const RealPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const double c = p[k];
    if (c == 0.0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    os << std::abs(c);
    if (k >= 1) os << " " << var;
    if (k >= 2) os << "^" << k;
    first = false;
  }
  return os.str();
}

Complex BivariatePoly::operator()(Complex zeta, Complex s) const {
  Complex acc = 0.0;
  for (auto it = s_coeffs_.rbegin(); it != s_coeffs_.rend(); ++it) {
    acc = acc * s + (*it)(zeta);
  }
  return acc;
}

BivariatePoly operator+(const BivariatePoly& a, const BivariatePoly& b) {
  std::vector<ComplexPoly> v(std::max(a.s_coeffs_.size(), b.s_coeffs_.size()));
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
  }
  return BivariatePoly(std::move(v));
}

BivariatePoly BivariatePoly::operator-() const {
  std::vector<ComplexPoly> v = s_coeffs_;
  for (ComplexPoly& c : v) c = -c;
  return BivariatePoly(std::move(v));
}

BivariatePoly operator-(const BivariatePoly& a, const BivariatePoly& b) {
  return a + (-b);
}

BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<ComplexPoly> v(a.s_coeffs_.size() + b.s_coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.s_coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.s_coeffs_.size(); ++j) {
      v[i + j] += a.s_coeffs_[i] * b.s_coeffs_[j];
    }
  }
  return BivariatePoly(std::move(v));
}

}  // namespace rdacert
