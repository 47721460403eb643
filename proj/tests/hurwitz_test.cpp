#include "rdacert/hurwitz.hpp"

#include <chrono>

#include <gtest/gtest.h>

#include "rdacert/errors.hpp"
#include "test_util.hpp"

namespace rdacert {
namespace {

SystemSpec scalar_spec(double v) {
  return SystemSpec::generic(Eigen::MatrixXd::Constant(1, 1, -1.0),
                             Eigen::VectorXd::Constant(1, 1.0),
                             Eigen::VectorXd::Constant(1, v));
}

void expect_coeffs_within(const RealPoly& got, const RealPoly& printed, double rel) {
  ASSERT_EQ(got.degree(), printed.degree());
  for (int k = 0; k <= printed.degree(); ++k) {
    if (printed[k] == 0.0) {
      EXPECT_LE(std::abs(got[k]), 1e-9 * got.max_abs_coeff()) << "z^" << k;
    } else {
      EXPECT_LE(testing::rel_err(got[k], printed[k]), rel)
          << "z^" << k << ": got " << got[k] << " printed " << printed[k];
    }
  }
}

TEST(HurwitzTest, ScalarCharPoly) {
  const BivariatePoly phi = char_poly(scalar_spec(0.0));
  ASSERT_EQ(phi.degree_s(), 1);
  EXPECT_EQ(phi.coeff(1), ComplexPoly::constant(1.0));
  EXPECT_EQ(phi.coeff(0), (ComplexPoly{Complex(1), Complex(0), Complex(1)}));

  const BivariatePoly adv = char_poly(scalar_spec(2.5));
  EXPECT_EQ(adv.coeff(0), (ComplexPoly{Complex(1), Complex(0, -2.5), Complex(1)}));
}

TEST(HurwitzTest, GrayScottLinearCoefficient) {
  const SystemSpec s = gray_scott_jacobian(testing::stable_set());
  const BivariatePoly phi = char_poly(s);
  ASSERT_EQ(phi.degree_s(), 2);
  EXPECT_EQ(phi.coeff(2), ComplexPoly::constant(1.0));
  const RealPoly lin = real_part(phi.coeff(1));
  EXPECT_NEAR(lin[2], 7.0, 1e-12);
  EXPECT_NEAR(lin[0], -s.A.trace(), 1e-12);
  EXPECT_NEAR(lin[0], 0.18393, 1e-5);
  EXPECT_TRUE(imag_part(phi.coeff(1)).is_zero());
}

TEST(HurwitzTest, SplitExamples) {
  // s + c
  const CharSplit a = split_js(BivariatePoly({ComplexPoly::constant(2.0), ComplexPoly::constant(1.0)}));
  EXPECT_EQ(a.p[1], RealPoly{});
  EXPECT_EQ(a.p[0], RealPoly{2.0});
  EXPECT_EQ(a.q[1], RealPoly{1.0});
  EXPECT_EQ(a.q[0], RealPoly{});

  // s^2 + alpha s + beta
  const CharSplit b = split_js(BivariatePoly(
      {ComplexPoly::constant(3.0), ComplexPoly::constant(5.0), ComplexPoly::constant(1.0)}));
  EXPECT_EQ(b.p[2], RealPoly{-1.0});
  EXPECT_EQ(b.p[1], RealPoly{});
  EXPECT_EQ(b.p[0], RealPoly{3.0});
  EXPECT_EQ(b.q[2], RealPoly{});
  EXPECT_EQ(b.q[1], RealPoly{5.0});
  EXPECT_EQ(b.q[0], RealPoly{});

  // s + 1 + z^2 - j v z
  const CharSplit c = split_js(char_poly(scalar_spec(0.7)));
  EXPECT_EQ(c.p[1], RealPoly{});
  EXPECT_EQ(c.p[0], (RealPoly{1.0, 0.0, 1.0}));
  EXPECT_EQ(c.q[1], RealPoly{1.0});
  EXPECT_EQ(c.q[0], (RealPoly{0.0, -0.7}));
}

TEST(HurwitzTest, SplitReconstructsPhi) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const SystemSpec s = testing::random_spec(rng, 1 + trial % 3);
    const BivariatePoly phi = char_poly(s);
    const CharSplit sp = split_js(phi);
    const double z = 0.37, x = -0.81;
    Complex sum = 0.0;
    for (int k = 0; k <= sp.n; ++k) sum += Complex(sp.p[k](z), sp.q[k](z)) * std::pow(x, k);
    const Complex want = phi(z, Complex(0, x));
    EXPECT_LE(std::abs(sum - want), 1e-12 * std::max(1.0, std::abs(want)));
  }
}

TEST(HurwitzTest, SylvesterLayout) {
  const CharSplit c = split_js(char_poly(scalar_spec(0.0)));
  const ComplexPolyMatrix S1 = sylvester(c);
  ASSERT_EQ(S1.rows(), 2);
  EXPECT_EQ(S1(0, 0), ComplexPoly::constant(1.0));
  EXPECT_TRUE(S1(0, 1).is_zero());
  EXPECT_TRUE(S1(1, 0).is_zero());
  EXPECT_EQ(S1(1, 1), (ComplexPoly{Complex(1), Complex(0), Complex(1)}));

  CharSplit two;
  two.n = 2;
  for (int k = 0; k <= 2; ++k) {
    two.p.push_back(RealPoly{10.0 + k});
    two.q.push_back(RealPoly{20.0 + k});
  }
  const ComplexPolyMatrix S = sylvester(two);
  ASSERT_EQ(S.rows(), 4);
  auto val = [&](int i, int j) { return S(i, j)(0.0).real(); };
  // row0 = (q2, q1, q0, 0), row1 = (p2, p1, p0, 0), rows 2/3 shifted by one.
  const double want[4][4] = {{22, 21, 20, 0}, {12, 11, 10, 0}, {0, 22, 21, 20}, {0, 12, 11, 10}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(val(i, j), want[i][j]) << i << "," << j;
}

TEST(HurwitzTest, PrintedMinorsStableSet) {
  const auto t0 = std::chrono::steady_clock::now();
  const MinorSet m = hurwitz_minors(gray_scott_jacobian(testing::stable_set()));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_LT(secs, 1.0);
  ASSERT_EQ(m.n, 2);
  expect_coeffs_within(m[0], testing::printed_delta1_stable(), 0.01);
  expect_coeffs_within(m[1], testing::printed_delta2_stable(), 0.01);
  EXPECT_EQ(m.calibration, Complex(1.0));
}

TEST(HurwitzTest, PrintedMinorsTuringSet) {
  const MinorSet m = hurwitz_minors(gray_scott_jacobian(testing::turing_set()));
  expect_coeffs_within(m[0], testing::printed_delta1_unstable(), 0.01);
  // The constant term is printed as 0.000033 (two digits): compare it at
  // that precision and the rest at 1%.
  RealPoly upper{0.0, 0.0, 0.0045, 0.0, -0.0999, 0.0, -19.141, 0.0, 294.0};
  std::vector<double> c = m[1].coeffs();
  c[0] = 0.0;
  expect_coeffs_within(RealPoly(c), upper, 0.01);
  EXPECT_NEAR(m[1][0], 0.000033, 0.5e-6);
  EXPECT_NEAR(m[1][0], 3.33884e-5, 1e-9);
}

TEST(HurwitzTest, ScalarMinorIgnoresAdvection) {
  for (double v : {0.0, 0.5, 3.0}) {
    const MinorSet m = hurwitz_minors(scalar_spec(v));
    ASSERT_EQ(m.n, 1);
    EXPECT_EQ(m[0], (RealPoly{1.0, 0.0, 1.0}));
  }
}

TEST(HurwitzTest, ImaginaryResidueDetected) {
  ComplexPolyMatrix S(2, 2);
  S(0, 0) = ComplexPoly::constant(Complex(1.0, 0.5));
  S(1, 1) = ComplexPoly::constant(1.0);
  EXPECT_THROW(minors(S), ImaginaryResidue);
}

TEST(HurwitzTest, MinorsAreEven) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const SystemSpec s = testing::random_spec(rng, 1 + trial % 3);
    const BivariatePoly phi = char_poly(s);
    // Raw determinants before the even projection.
    const ComplexPolyMatrix S = sylvester(split_js(phi));
    for (int i = 1; i <= s.n(); ++i) {
      const RealPoly raw = real_part(det(S.leading_block(2 * i)));
      for (int k = 1; k <= raw.degree(); k += 2) {
        EXPECT_LE(std::abs(raw[k]), 1e-9 * raw.max_abs_coeff());
      }
    }
  }
}

TEST(HurwitzTest, TwoSpeciesNoFlowDelta1) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    SystemSpec s = testing::random_spec(rng, 2);
    s.V.setZero();
    const MinorSet m = hurwitz_minors(s);
    const RealPoly want{-s.A.trace(), 0.0, s.D.sum()};
    for (int k = 0; k <= 2; ++k) EXPECT_NEAR(m[0][k], want[k], 1e-12);
  }
}

TEST(HurwitzTest, EigenOracleExamples) {
  const SystemSpec stable = gray_scott_jacobian(testing::stable_set());
  EXPECT_LT(eigen_sample_oracle(stable, {0.0}).front().abscissa, 0.0);

  std::mt19937_64 rng(51);
  const SystemSpec r = testing::random_spec(rng, 3);
  for (double z : {0.1, 0.7, 2.3}) {
    const auto both = eigen_sample_oracle(r, {z, -z});
    EXPECT_NEAR(both[0].abscissa, both[1].abscissa, 1e-12);
  }

  const SystemSpec flow = gray_scott_jacobian(testing::flow_set());
  double worst = -1.0;
  for (const auto& smp : eigen_sample_oracle(flow, uniform_grid(0.25, 1501))) {
    if (smp.zeta > 0.1) worst = std::max(worst, smp.abscissa);
  }
  EXPECT_GT(worst, 0.0);
}

// Executable Hurwitz criterion: all minors positive <=> negative abscissa.
TEST(HurwitzTest, SignAgreementWithEigenvalues) {
  std::mt19937_64 rng(61);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const SystemSpec s = testing::random_spec(rng, 1 + trial % 3);
    const MinorSet m = hurwitz_minors(s);
    const auto curve = eigen_sample_oracle(s, uniform_grid(default_zeta_max(m), 401));
    for (const auto& smp : curve) {
      double min_abs = std::numeric_limits<double>::infinity();
      for (const RealPoly& d : m.deltas) min_abs = std::min(min_abs, std::abs(d(smp.zeta)));
      if (min_abs < 1e-8 || std::abs(smp.abscissa) < 1e-8) continue;
      EXPECT_EQ(m.min_value(smp.zeta) > 0.0, smp.abscissa < 0.0)
          << "trial " << trial << " zeta " << smp.zeta;
      ++checked;
    }
  }
  EXPECT_GT(checked, 5000);
}

}  // namespace
}  // namespace rdacert
