#include "rdacert/hurwitz.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "rdacert/errors.hpp"

namespace rdacert {
namespace {

constexpr Complex kJ{0.0, 1.0};

Complex j_power(int k) {
  static const std::array<Complex, 4> cycle{Complex(1, 0), Complex(0, 1),
                                            Complex(-1, 0), Complex(0, -1)};
  return cycle[static_cast<std::size_t>(k % 4)];
}

MinorSet build(const BivariatePoly& phi, Complex unit) {
  MinorSet m = minors(sylvester(split_js(phi, unit)));
  m.calibration = unit;
  return m;
}

}  // namespace

double MinorSet::min_value(double zeta) const {
  double v = std::numeric_limits<double>::infinity();
  for (const RealPoly& d : deltas) v = std::min(v, d(zeta));
  return v;
}

BivariatePoly char_poly(const SystemSpec& spec) {
  spec.validate();
  const int n = spec.n();
  BivariatePolyMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        // s - a_ii + d_i zeta^2 - j v_i zeta
        const ComplexPoly c0{Complex(-spec.A(i, i)), -kJ * spec.V(i),
                             Complex(spec.D(i))};
        m(i, j) = BivariatePoly({c0, ComplexPoly::constant(1.0)});
      } else {
        m(i, j) = BivariatePoly::constant(ComplexPoly::constant(-spec.A(i, j)));
      }
    }
  }
  BivariatePoly phi = det_cofactor(m);
  std::vector<ComplexPoly> coeffs = phi.s_coeffs();
  for (ComplexPoly& c : coeffs) c = c.truncated();
  return BivariatePoly(std::move(coeffs));
}

CharSplit split_js(const BivariatePoly& phi, Complex unit) {
  CharSplit out;
  out.n = phi.degree_s();
  if (out.n < 1) throw InputError("split_js: phi must have positive degree in s");
  for (int k = 0; k <= out.n; ++k) {
    const ComplexPoly c = (unit * j_power(k)) * phi.coeff(k);
    out.p.push_back(real_part(c));
    out.q.push_back(imag_part(c));
  }
  return out;
}

ComplexPolyMatrix sylvester(const CharSplit& split) {
  const int n = split.n;
  ComplexPolyMatrix S(2 * n, 2 * n);
  for (int m = 0; m < n; ++m) {
    for (int t = 0; t <= n; ++t) {
      const int col = m + t;
      if (col >= 2 * n) break;
      S(2 * m, col) = to_complex(split.q[n - t]);
      S(2 * m + 1, col) = to_complex(split.p[n - t]);
    }
  }
  return S;
}

MinorSet minors(const ComplexPolyMatrix& S, double residue_tol) {
  if (!S.square() || S.rows() % 2 != 0) {
    throw ShapeMismatch("minors: expected a 2n x 2n Sylvester matrix");
  }
  MinorSet out;
  out.n = S.rows() / 2;
  for (int i = 1; i <= out.n; ++i) {
    const ComplexPoly full = det(S.leading_block(2 * i));
    const RealPoly d = real_part(full);
    const double ref = d.max_abs_coeff();
    const double residue = imag_part(full).max_abs_coeff();
    if (residue > residue_tol * ref) {
      std::ostringstream os;
      os << "Delta_" << i << " has imaginary residue " << residue
         << " (relative tolerance " << residue_tol << ")";
      throw ImaginaryResidue(os.str());
    }
    // Even part only: odd coefficients are cancellation noise.
    std::vector<double> c = d.coeffs();
    for (std::size_t k = 1; k < c.size(); k += 2) {
      if (std::abs(c[k]) > residue_tol * ref) {
        std::ostringstream os;
        os << "Delta_" << i << " is not even: coefficient of z^" << k << " = "
           << c[k];
        throw InternalError(os.str());
      }
      c[k] = 0.0;
    }
    out.deltas.emplace_back(std::move(c));
  }
  return out;
}

Eigen::MatrixXcd mode_matrix(const SystemSpec& spec, double zeta) {
  Eigen::MatrixXcd M = spec.A.cast<Complex>();
  for (int i = 0; i < spec.n(); ++i) {
    M(i, i) += -zeta * zeta * spec.D(i) + kJ * zeta * spec.V(i);
  }
  return M;
}

std::vector<SpectralSample> eigen_sample_oracle(
    const SystemSpec& spec, const std::vector<double>& zeta_grid) {
  std::vector<SpectralSample> out;
  out.reserve(zeta_grid.size());
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver;
  for (double z : zeta_grid) {
    solver.compute(mode_matrix(spec, z), false);
    const auto& ev = solver.eigenvalues();
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < ev.size(); ++k) {
      if (ev(k).real() > ev(best).real()) best = k;
    }
    out.push_back({z, ev(best).real(), ev(best).imag()});
  }
  return out;
}

std::vector<double> uniform_grid(double zeta_max, int points) {
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    g[k] = points == 1 ? 0.0 : zeta_max * k / (points - 1);
  }
  return g;
}

double default_zeta_max(const MinorSet& m) {
  const double b = cauchy_bound(m.deltas.back());
  return b > 0.0 ? 2.0 * b : 1.0;
}

MinorSet hurwitz_minors(const SystemSpec& spec) {
  const BivariatePoly phi = char_poly(spec);
  MinorSet m = build(phi, 1.0);

  // Probe at the most stable grid frequency; all minors must be positive
  // there under the right normalization.
  const auto curve = eigen_sample_oracle(spec, uniform_grid(default_zeta_max(m)));
  const SpectralSample* probe = nullptr;
  for (const auto& s : curve) {
    if (!probe || s.abscissa < probe->abscissa) probe = &s;
  }
  if (!probe || probe->abscissa > -1e-6) return m;

  const double z = probe->zeta;
  for (Complex unit : {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)}) {
    MinorSet cand = unit == Complex(1, 0) ? m : build(phi, unit);
    if (cand.min_value(z) > 0.0) {
      cand.calibration_probed = true;
      cand.calibration_probe = z;
      return cand;
    }
  }
  std::ostringstream os;
  os << "no unit scalar makes every minor positive at stable probe zeta = " << z;
  throw PipelineDisagreement(os.str());
}

}  // namespace rdacert
