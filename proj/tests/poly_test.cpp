#include "rdacert/poly.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace rdacert {
namespace {

TEST(PolyTest, DifferenceOfSquares) {
  const RealPoly a{1.0, 1.0}, b{1.0, -1.0};
  EXPECT_EQ(a * b, (RealPoly{1.0, 0.0, -1.0}));
}

TEST(PolyTest, EvaluatePrintedDelta1AtZero) {
  EXPECT_DOUBLE_EQ(testing::printed_delta1_stable()(0.0), 0.184);
}

TEST(PolyTest, ComposeAffineBinomial) {
  const RealPoly sq = RealPoly::monomial(2);
  EXPECT_EQ(sq.compose_affine(1.0, 1.0), (RealPoly{1.0, 2.0, 1.0}));
}

TEST(PolyTest, ZeroPolynomialIsTotal) {
  const RealPoly zero;
  EXPECT_TRUE(zero.is_zero());
  EXPECT_EQ(zero.degree(), RealPoly::kZeroDegree);
  EXPECT_EQ(zero(3.0), 0.0);
  EXPECT_TRUE((zero * RealPoly{1.0, 2.0}).is_zero());
  EXPECT_EQ(zero + RealPoly{1.0}, RealPoly{1.0});
  EXPECT_TRUE(zero.derivative().is_zero());
  EXPECT_TRUE((RealPoly{1.0, 2.0} - RealPoly{1.0, 2.0}).is_zero());
}

TEST(PolyTest, CanonicalAfterCancellation) {
  const RealPoly p = RealPoly{1.0, 2.0, 3.0} - RealPoly{0.0, 0.0, 3.0};
  EXPECT_EQ(p.degree(), 1);
  EXPECT_NE(p.leading(), 0.0);
}

TEST(PolyTest, TruncationDropsRelativeNoise) {
  const RealPoly p{1.0, 1e-14, 2.0, 1e-13};
  const RealPoly t = p.truncated();
  EXPECT_EQ(t, (RealPoly{1.0, 0.0, 2.0}));
}

TEST(PolyTest, DivmodReconstructs) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const RealPoly a = testing::random_poly(rng, 7), b = testing::random_poly(rng, 3);
    const auto [q, r] = a.divmod(b);
    EXPECT_LT(r.degree(), b.degree());
    const RealPoly back = q * b + r;
    const double scale = 1.0 + q.max_abs_coeff() * b.max_abs_coeff();
    for (int k = 0; k <= a.degree(); ++k) EXPECT_NEAR(back[k], a[k], 1e-12 * scale);
  }
}

TEST(PolyTest, ComplexParts) {
  const ComplexPoly c{Complex(1, 2), Complex(0, -1), Complex(3, 0)};
  EXPECT_EQ(real_part(c), (RealPoly{1.0, 0.0, 3.0}));
  EXPECT_EQ(imag_part(c), (RealPoly{2.0, -1.0}));
  EXPECT_EQ(make_complex(real_part(c), imag_part(c)), c);
}

TEST(PolyTest, HornerMatchesDirectSum) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const RealPoly p = testing::random_poly(rng, 9);
    const double x = 0.7;
    double direct = 0.0;
    for (int k = 0; k <= p.degree(); ++k) direct += p[k] * std::pow(x, k);
    EXPECT_NEAR(p(x), direct, 1e-12);
  }
}

TEST(PolyTest, CauchyBoundContainsRoots) {
  // (z - 3)(z + 2) = z^2 - z - 6
  const RealPoly p{-6.0, -1.0, 1.0};
  EXPECT_GE(cauchy_bound(p), 3.0);
  EXPECT_EQ(cauchy_bound(RealPoly{5.0}), 0.0);
}

TEST(PolyTest, BivariateEvaluation) {
  // s + 1 + z^2 - j v z with v = 2
  const BivariatePoly phi({ComplexPoly{Complex(1), Complex(0, -2), Complex(1)},
                           ComplexPoly::constant(1.0)});
  const Complex z(0.5, 0.0), s(0.1, 0.3);
  EXPECT_NEAR(std::abs(phi(z, s) - (s + 1.0 + z * z - Complex(0, 2) * z)), 0.0, 1e-15);
}

}  // namespace
}  // namespace rdacert
