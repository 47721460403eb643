#pragma once

#include <vector>

#include "rdacert/model.hpp"
#include "rdacert/poly.hpp"
#include "rdacert/poly_matrix.hpp"

namespace rdacert {

/// Real/imaginary split of u * phi(zeta, j s) = sum_k (p_k + j q_k) s^k.
/// p[k] and q[k] multiply s^k (ascending storage; the Sylvester layout reads
/// them from k = n down to 0).
struct CharSplit {
  int n = 0;
  std::vector<RealPoly> p;
  std::vector<RealPoly> q;
};

/// Hurwitz minors Delta_1 .. Delta_n, each an even real polynomial in zeta.
struct MinorSet {
  int n = 0;
  std::vector<RealPoly> deltas;
  /// Unit scalar applied to phi(zeta, j s) before splitting.
  Complex calibration = 1.0;
  /// True when the scalar was chosen by comparing against the eigenvalue
  /// oracle at a stable probe frequency (false: no stable probe existed).
  bool calibration_probed = false;
  double calibration_probe = 0.0;

  const RealPoly& operator[](int i) const { return deltas.at(i); }
  /// min_i Delta_i(zeta).
  double min_value(double zeta) const;
};

/// phi(zeta, s) = det(s I - A + D zeta^2 - j zeta V); monic of degree n in s.
BivariatePoly char_poly(const SystemSpec& spec);

/// Substitutes s -> j s, multiplies by `unit`, and separates real and
/// imaginary parts.
CharSplit split_js(const BivariatePoly& phi, Complex unit = 1.0);

/// 2n x 2n Sylvester matrix (real entries stored as complex polynomials): row pair m holds (q_n .. q_0) and (p_n .. p_0)
/// shifted right by m columns.
ComplexPolyMatrix sylvester(const CharSplit& split);

/// Leading principal 2i x 2i minors of the Sylvester matrix. Throws
/// ImaginaryResidue if a determinant carries an imaginary part above
/// `residue_tol` relative, and InternalError if a minor is not even.
MinorSet minors(const ComplexPolyMatrix& S, double residue_tol = 1e-9);

struct SpectralSample {
  double zeta = 0.0;
  double abscissa = 0.0;   // max Re eig(A - zeta^2 D + j zeta V)
  double imag_at_max = 0.0;
};

Eigen::MatrixXcd mode_matrix(const SystemSpec& spec, double zeta);

/// Dense spectral-abscissa curve, independent of the minor construction.
std::vector<SpectralSample> eigen_sample_oracle(const SystemSpec& spec,
                                                const std::vector<double>& zeta_grid);

/// Uniform grid of `points` values on [0, zeta_max].
std::vector<double> uniform_grid(double zeta_max, int points = 2001);

/// 2 * Cauchy bound of Delta_n (1 if Delta_n is constant).
double default_zeta_max(const MinorSet& m);

/// Full construction: char_poly -> split_js -> sylvester -> minors, with the
/// unit-scalar calibration against the eigenvalue oracle.
MinorSet hurwitz_minors(const SystemSpec& spec);

}  // namespace rdacert
