#include "rdacert/poly_matrix.hpp"

namespace rdacert {

ComplexPoly det(const ComplexPolyMatrix& m) {
  if (!m.square()) throw NonSquare("determinant of a non-square matrix");
  const ComplexPoly d = m.rows() <= 3 ? det_cofactor(m) : det_bareiss(m);
  return d.truncated();
}

RealPoly det(const RealPolyMatrix& m) {
  if (!m.square()) throw NonSquare("determinant of a non-square matrix");
  const RealPoly d = m.rows() <= 3 ? det_cofactor(m) : det_bareiss(m);
  return d.truncated();
}

Eigen::MatrixXcd evaluate(const ComplexPolyMatrix& m, Complex zeta) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j)(zeta);
  }
  return out;
}

}  // namespace rdacert
