#include "rdacert/sturm.hpp"

#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "rdacert/errors.hpp"
#include "test_util.hpp"

namespace rdacert {
namespace {

TEST(SturmTest, CountsRoots) {
  const RealPoly p = RealPoly{-1.0, 0.0, 1.0} * RealPoly{-4.0, 0.0, 1.0};  // roots +-1, +-2
  const auto chain = sturm_sequence(p);
  EXPECT_EQ(count_roots(chain, -10.0, 10.0), 4);
  EXPECT_EQ(count_roots(chain, 0.0, 1.5), 1);
  EXPECT_EQ(count_roots(chain, -std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity()), 4);
  const auto roots = real_roots(p, -3.0, 3.0);
  ASSERT_EQ(roots.size(), 4u);
  EXPECT_NEAR(roots[0], -2.0, 1e-12);
  EXPECT_NEAR(roots[3], 2.0, 1e-12);
}

TEST(SturmTest, PositiveQuadratic) {
  const NonnegResult r = sturm_nonneg_oracle(RealPoly{0.184, 0.0, 7.0}, Interval::global());
  EXPECT_TRUE(r.nonnegative);
  EXPECT_TRUE(r.roots.empty());
  EXPECT_FALSE(r.witness.has_value());
}

TEST(SturmTest, UnstableDeltaHasWitness) {
  const RealPoly d = testing::printed_delta2_unstable();
  const NonnegResult r = sturm_nonneg_oracle(d, Interval::global());
  ASSERT_FALSE(r.nonnegative);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_LT(d(*r.witness), 0.0);
  EXPECT_EQ(r.witness_value, d(*r.witness));
  EXPECT_GT(std::abs(*r.witness), 0.1);
  EXPECT_EQ(r.roots.size(), 4u);
}

TEST(SturmTest, DoubleRootIsNonnegative) {
  const RealPoly sq = RealPoly{-1.0, 1.0} * RealPoly{-1.0, 1.0};
  const NonnegResult r = sturm_nonneg_oracle(sq, Interval::global());
  EXPECT_TRUE(r.nonnegative);
  ASSERT_EQ(r.roots.size(), 1u);
  EXPECT_NEAR(r.roots[0], 1.0, 1e-6);
}

TEST(SturmTest, Intervals) {
  const RealPoly p{-1.0, 0.0, 1.0};  // negative on (-1, 1)
  EXPECT_TRUE(sturm_nonneg_oracle(p, Interval::finite(1.0, 3.0)).nonnegative);
  EXPECT_FALSE(sturm_nonneg_oracle(p, Interval::finite(0.5, 3.0)).nonnegative);
  EXPECT_TRUE(sturm_nonneg_oracle(p, Interval::semi_infinite(1.0)).nonnegative);
  EXPECT_FALSE(sturm_nonneg_oracle(RealPoly{0.0, -1.0}, Interval::semi_infinite(0.0)).nonnegative);
  EXPECT_TRUE(sturm_nonneg_oracle(RealPoly{0.0, 1.0}, Interval::semi_infinite(0.0)).nonnegative);
}

TEST(SturmTest, Errors) {
  EXPECT_THROW(sturm_nonneg_oracle(RealPoly{}, Interval::global()), InputError);
  EXPECT_THROW(sturm_nonneg_oracle(RealPoly{1.0}, Interval::finite(2.0, 1.0)), BadInterval);
}

TEST(SturmTest, MinimumValue) {
  EXPECT_NEAR(minimum_value(RealPoly{-1.0, 0.0, 1.0}, Interval::global()), -1.0, 1e-14);
  EXPECT_NEAR(minimum_value(RealPoly{-1.0, 0.0, 1.0}, Interval::finite(2.0, 3.0)), 3.0, 1e-14);
  EXPECT_TRUE(std::isinf(minimum_value(RealPoly{0.0, 1.0}, Interval::global())));
}

// Random products of known linear and quadratic factors: the oracle must
// recover the sign structure exactly.
TEST(SturmTest, AgreesWithFactoredPolynomials) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0), pos(0.05, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    RealPoly p{pos(rng)};
    std::vector<double> odd_roots;
    const int linear = static_cast<int>(rng() % 3);
    for (int k = 0; k < linear; ++k) {
      const double r = u(rng);
      odd_roots.push_back(r);
      p *= RealPoly{-r, 1.0};
    }
    p *= RealPoly{pos(rng) + 0.1, u(rng) * 0.1, 1.0};
    const NonnegResult res = sturm_nonneg_oracle(p, Interval::global());
    bool separated = true;
    for (std::size_t i = 0; i < odd_roots.size(); ++i)
      for (std::size_t j = i + 1; j < odd_roots.size(); ++j)
        if (std::abs(odd_roots[i] - odd_roots[j]) < 1e-3) separated = false;
    if (!separated) continue;
    EXPECT_EQ(res.nonnegative, odd_roots.empty()) << "trial " << trial;
    if (!res.nonnegative) EXPECT_LT(p(*res.witness), 0.0);
  }
}

TEST(SturmTest, Minimizer) {
  // (x^2 - 1)^2 + 0.5 x: the left well is deeper.
  const RealPoly p{1.0, 0.5, -2.0, 0.0, 1.0};
  const Minimizer m = minimizer(p, Interval::global());
  double best_x = 0.0, best = 1e300;
  for (int i = -40000; i <= 40000; ++i) {
    const double x = i * 1e-4;
    if (p(x) < best) best = p(x), best_x = x;
  }
  EXPECT_NEAR(m.zeta, best_x, 2e-4);
  EXPECT_NEAR(m.value, best, 1e-7);
  EXPECT_DOUBLE_EQ(minimum_value(p, Interval::global()), m.value);

  const Minimizer edge = minimizer(RealPoly{0.0, 1.0}, Interval::finite(2.0, 3.0));
  EXPECT_DOUBLE_EQ(edge.zeta, 2.0);
  EXPECT_DOUBLE_EQ(edge.value, 2.0);
  EXPECT_EQ(minimizer(RealPoly{0.0, 0.0, -1.0}, Interval::semi_infinite(0.0)).value,
            -std::numeric_limits<double>::infinity());
}

}  // namespace
}  // namespace rdacert
