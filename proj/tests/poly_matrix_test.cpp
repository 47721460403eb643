#include "rdacert/poly_matrix.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace rdacert {
namespace {

ComplexPolyMatrix random_matrix(std::mt19937_64& rng, int n, int degree) {
  ComplexPolyMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = testing::random_cpoly(rng, degree);
  return m;
}

void expect_close(const ComplexPoly& a, const ComplexPoly& b, double tol) {
  const double scale = std::max({1.0, a.max_abs_coeff(), b.max_abs_coeff()});
  const int top = std::max(a.degree(), b.degree());
  for (int k = 0; k <= top; ++k) {
    EXPECT_LE(std::abs(a[k] - b[k]), tol * scale) << "coefficient " << k;
  }
}

TEST(PolyMatrixTest, OneByOne) {
  ComplexPolyMatrix m(1, 1);
  m(0, 0) = ComplexPoly{Complex(2), Complex(0, 1), Complex(3)};
  EXPECT_EQ(det(m), m(0, 0));
  EXPECT_EQ(det_bareiss(m), m(0, 0));
}

TEST(PolyMatrixTest, TwoByTwoLeibniz) {
  RealPolyMatrix m(2, 2);
  m(0, 0) = RealPoly{1.0, 1.0};
  m(0, 1) = RealPoly{0.0, 2.0};
  m(1, 0) = RealPoly{3.0};
  m(1, 1) = RealPoly{1.0, 0.0, 1.0};
  const RealPoly expect = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  EXPECT_EQ(det(m), expect);
}

TEST(PolyMatrixTest, NonSquareRejected) {
  ComplexPolyMatrix m(2, 3);
  EXPECT_THROW(det(m), NonSquare);
  EXPECT_THROW(det_cofactor(m), NonSquare);
  EXPECT_THROW(det_bareiss(m), NonSquare);
}

TEST(PolyMatrixTest, BareissEqualsCofactor) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 5;
    const auto m = random_matrix(rng, n, 2);
    expect_close(det_bareiss(m), det_cofactor(m), 1e-9);
  }
}

TEST(PolyMatrixTest, BareissHandlesZeroPivot) {
  // Sylvester-like structure with a zero leading entry.
  RealPolyMatrix m(3, 3);
  m(0, 1) = RealPoly{1.0};
  m(1, 0) = RealPoly{0.0, 1.0};
  m(1, 2) = RealPoly{2.0};
  m(2, 2) = RealPoly{1.0, 0.0, 1.0};
  EXPECT_EQ(det_bareiss(m), det_cofactor(m));
}

TEST(PolyMatrixTest, DeterminantIsMultiplicative) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const auto P = random_matrix(rng, n, 2), Q = random_matrix(rng, n, 2);
    expect_close(det(P * Q), det(P) * det(Q), 1e-9);
  }
}

TEST(PolyMatrixTest, EvaluationCommutesWithDeterminant) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 4;
    const auto m = random_matrix(rng, n, 2);
    const Complex z(u(rng), u(rng));
    const Complex numeric = evaluate(m, z).determinant();
    const Complex symbolic = det(m)(z);
    EXPECT_LE(std::abs(symbolic - numeric), 1e-9 * std::max(1.0, std::abs(numeric)));
  }
}

TEST(PolyMatrixTest, BivariateDeterminantMatchesNumeric) {
  // det(s I - B(z)) evaluated at (z0, s0) against the numeric determinant.
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 3;
    BivariatePolyMatrix m(n, n);
    std::vector<ComplexPoly> b(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        b[i * n + j] = testing::random_cpoly(rng, 2);
        std::vector<ComplexPoly> coeffs{-b[i * n + j]};
        if (i == j) coeffs.push_back(ComplexPoly::constant(1.0));
        m(i, j) = BivariatePoly(coeffs);
      }
    }
    const Complex z(u(rng), u(rng)), s(u(rng), u(rng));
    Eigen::MatrixXcd num(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) num(i, j) = (i == j ? s : Complex(0)) - b[i * n + j](z);
    const Complex want = num.determinant();
    EXPECT_LE(std::abs(det_cofactor(m)(z, s) - want), 1e-9 * std::max(1.0, std::abs(want)));
  }
}

}  // namespace
}  // namespace rdacert
