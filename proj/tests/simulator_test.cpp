#include "rdacert/simulator.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>
#include <json.hpp>

#include "rdacert/errors.hpp"
#include "rdacert/hurwitz.hpp"
#include "test_util.hpp"

namespace rdacert {
namespace {

using testing::flow_set;
using testing::stable_set;
using testing::turing_set;

constexpr double kPi = std::numbers::pi;

TEST(SimulatorTest, ReactionTerms) {
  const GrayScottParams p = stable_set();
  auto [f1, f2] = gray_scott_rhs({1.0, 0.5}, {0.0, 0.25}, p);
  EXPECT_DOUBLE_EQ(f1[0], 0.0);
  EXPECT_DOUBLE_EQ(f2[0], 0.0);
  // -0.5 * 0.0625 + 0.06 * 0.5 and 0.5 * 0.0625 - 0.1 * 0.25
  EXPECT_NEAR(f1[1], -0.03125 + 0.03, 1e-15);
  EXPECT_NEAR(f2[1], 0.03125 - 0.025, 1e-15);

  const Equilibrium e = gray_scott_equilibrium(p);
  auto [g1, g2] = gray_scott_rhs({e.c1}, {e.c2}, p);
  EXPECT_NEAR(g1[0], 0.0, 1e-15);
  EXPECT_NEAR(g2[0], 0.0, 1e-15);
  EXPECT_THROW(gray_scott_rhs({1.0}, {1.0, 2.0}, p), ShapeMismatch);
}

TEST(SimulatorTest, SpectralDerivative) {
  const int n = 256;
  const double L = 30.0 * kPi;
  std::vector<double> f(n);
  for (int m = 1; m <= n / 4; ++m) {
    const double k = 2.0 * kPi * m / L;
    for (int j = 0; j < n; ++j) f[j] = std::sin(k * L * j / n) + 0.5 * std::cos(k * L * j / n);
    const auto d1 = spectral_derivative(f, L, 1);
    const auto d2 = spectral_derivative(f, L, 2);
    for (int j = 0; j < n; ++j) {
      const double x = L * j / n;
      EXPECT_NEAR(d1[j], k * std::cos(k * x) - 0.5 * k * std::sin(k * x), 1e-10 * (1.0 + k)) << m;
      EXPECT_NEAR(d2[j], -k * k * f[j], 1e-10 * (1.0 + k * k)) << m;
    }
  }
  const auto d0 = spectral_derivative(f, L, 0);
  for (int j = 0; j < n; ++j) EXPECT_NEAR(d0[j], f[j], 1e-13);
  EXPECT_THROW(spectral_derivative(f, L, -1), InputError);
}

TEST(SimulatorTest, DominantMode) {
  const int n = 512;
  const double L = 30.0 * kPi;
  std::vector<double> f(n);
  for (int j = 0; j < n; ++j) {
    const double x = L * j / n;
    f[j] = 0.3 + 0.1 * std::cos(2.0 * kPi * 3 * x / L) + 0.01 * std::sin(2.0 * kPi * 7 * x / L);
  }
  const ModeInfo m = dominant_mode(f, L);
  EXPECT_EQ(m.k, 3);
  EXPECT_NEAR(m.zeta, 0.2, 1e-12);
  EXPECT_NEAR(m.power_fraction, 0.01 / 0.0101, 1e-9);

  const ModeInfo flat = dominant_mode(std::vector<double>(n, 0.7), L);
  EXPECT_EQ(flat.k, 0);
  EXPECT_EQ(flat.power_fraction, 0.0);

  EXPECT_NEAR(std::abs(fourier_mode(f, 3)), 0.05, 1e-12);
  EXPECT_NEAR(fourier_mode(f, 0).real(), 0.3, 1e-12);
}

TEST(SimulatorTest, ConfigValidation) {
  SimConfig c;
  EXPECT_NO_THROW(c.validate());
  c.N = 100;
  EXPECT_THROW(c.validate(), InvalidSpec);
  c.N = 64;
  EXPECT_THROW(c.validate(), InvalidSpec);
  c = SimConfig{};
  c.dt = 0.0;
  EXPECT_THROW(c.validate(), InvalidSpec);
  c = SimConfig{};
  c.t_end = -1.0;
  EXPECT_THROW(c.validate(), InvalidSpec);
  c = SimConfig{};
  c.params.d = -1.0;
  EXPECT_THROW(c.validate(), InvalidSpec);
  c = SimConfig{};
  c.params = {0.06, 0.2, 6.0, 0.0, 0.0};  // no real equilibrium
  c.ic.kind = InitialCondition::Kind::kEquilibriumMode;
  c.t_end = 1.0;
  c.N = 128;
  EXPECT_THROW(integrate(c), NoRealEquilibrium);
}

TEST(SimulatorTest, StableCaseConvergesUnderStepHalving) {
  SimConfig c;
  c.params = stable_set();
  c.N = 256;
  c.t_end = 100.0;
  c.snapshot_every = 100;
  c.dt = 0.2;
  const SimTrajectory coarse = integrate(c);
  c.dt = 0.1;
  c.snapshot_every = 200;
  const SimTrajectory fine = integrate(c);
  ASSERT_EQ(coarse.frames.size(), fine.frames.size());
  double diff = 0.0;
  for (std::size_t j = 0; j < coarse.x.size(); ++j) {
    diff = std::max({diff, std::abs(coarse.frames.back().c1[j] - fine.frames.back().c1[j]),
                     std::abs(coarse.frames.back().c2[j] - fine.frames.back().c2[j])});
  }
  EXPECT_LT(diff, 1e-6);
  EXPECT_FALSE(coarse.undershoot);
  EXPECT_NEAR(coarse.frames.back().time, 100.0, 1e-12);
}

// Seeded eigenmodes grow at the real part of the dominant eigenvalue.
TEST(SimulatorTest, LinearGrowthMatchesEigenvalues) {
  const GrayScottParams p = flow_set();
  const SystemSpec spec = gray_scott_jacobian(p);
  SimConfig c;
  c.params = p;
  c.N = 256;
  c.dt = 0.1;
  c.t_end = 40.0;
  c.snapshot_every = 10;
  c.ic.kind = InitialCondition::Kind::kEquilibriumMode;
  for (int k = 1; k <= 6; ++k) {
    c.ic.mode = k;
    const SimTrajectory t = integrate(c);
    const double zeta = 2.0 * kPi * k / c.L;
    const double want = mode_matrix(spec, zeta).eigenvalues().real().maxCoeff();
    // least-squares slope of log |c1_k(t)|
    double st = 0, sy = 0, stt = 0, sty = 0;
    const double n = static_cast<double>(t.frames.size());
    for (const Frame& f : t.frames) {
      const double y = std::log(std::abs(fourier_mode(f.c1, k)));
      st += f.time;
      sy += y;
      stt += f.time * f.time;
      sty += f.time * y;
    }
    const double got = (n * sty - st * sy) / (n * stt - st * st);
    EXPECT_NEAR(got, want, 0.05 * std::abs(want)) << "k = " << k;
  }
}

TEST(SimulatorTest, TuringRegimeSelectsModeThree) {
  SimConfig c;
  c.params = turing_set();
  c.N = 256;
  c.t_end = 3000.0;
  c.snapshot_every = 1000;
  const SimTrajectory t = integrate(c);
  EXPECT_EQ(dominant_mode(t.frames.back().c1, c.L).k, 3);
  EXPECT_GT(t.diagnostics.back().variance_c1, 1e-6);
}

TEST(SimulatorTest, BlowupIsReported) {
  SimConfig c;
  c.N = 128;
  c.t_end = 50.0;
  c.ic.base1 = 500.0;
  c.ic.base2 = 500.0;
  try {
    integrate(c);
    FAIL() << "expected Blowup";
  } catch (const Blowup& e) {
    EXPECT_GE(e.time(), 0.0);
    EXPECT_LE(e.time(), 50.0);
  }
}

TEST(SimulatorTest, Exports) {
  SimConfig c;
  c.params = stable_set();
  c.N = 128;
  c.t_end = 10.0;
  c.dt = 0.5;
  c.snapshot_every = 5;
  const SimTrajectory t = integrate(c);
  ASSERT_EQ(t.frames.size(), 5u);

  std::ostringstream csv;
  write_trajectory_csv(csv, t);
  std::istringstream in(csv.str());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 2 + 5 * 128);

  std::ostringstream st;
  write_spacetime_csv(st, t, 2);
  EXPECT_NE(st.str().find("t\\x,0,"), std::string::npos);
  EXPECT_THROW(write_spacetime_csv(st, t, 3), InputError);

  const auto doc = nlohmann::json::parse(trajectory_summary_json(t));
  EXPECT_EQ(doc["frames"].size(), 5u);
  EXPECT_EQ(doc["reproduction_parameters"]["N"], 128);
  EXPECT_DOUBLE_EQ(doc["reproduction_parameters"]["dt"].get<double>(), 0.5);
  EXPECT_EQ(doc["initial_condition"]["kind"], "method");
}

}  // namespace
}  // namespace rdacert
