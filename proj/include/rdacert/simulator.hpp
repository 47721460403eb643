#pragma once

#include <iosfwd>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "rdacert/model.hpp"
#include "rdacert/poly.hpp"

namespace rdacert {

/// Initial condition. kMethod is
///   C_i(x, 0) = base_i + amp * sum_{k=1}^{modes} (cos(2 pi k x / L) + sin(2 pi k x / L))
/// with bases (0.5, 0.2), amp = 0.0025, 20 modes. kEquilibriumMode seeds the
/// equilibrium plus amplitude * Re(v exp(j zeta_k x)), v the dominant
/// eigenvector of A - zeta_k^2 D + j zeta_k V scaled to unit max modulus.
struct InitialCondition {
  enum class Kind { kMethod, kEquilibriumMode };
  Kind kind = Kind::kMethod;
  double base1 = 0.5;
  double base2 = 0.2;
  double method_amplitude = 0.0025;
  int method_modes = 20;
  int mode = 1;
  double amplitude = 1e-6;
};

struct SimConfig {
  GrayScottParams params;
  double L = 30.0 * std::numbers::pi;
  int N = 1024;
  double t_end = 3000.0;
  double dt = 0.2;
  int snapshot_every = 50;
  InitialCondition ic;
  /// Throws InvalidSpec: N >= 128 and a power of two, dt > 0, t_end > 0,
  /// snapshot_every >= 1, L > 0.
  void validate() const;
};

struct Frame {
  double time = 0.0;
  std::vector<double> c1;
  std::vector<double> c2;
};

struct FrameDiagnostics {
  double time = 0.0;
  double variance_c1 = 0.0;
  /// max |C_i - C_i*| over the grid, or deviation from the spatial mean when
  /// no real equilibrium exists.
  double sup_deviation = 0.0;
  double min_concentration = 0.0;
};

struct SimTrajectory {
  SimConfig config;
  int steps = 0;
  double dt = 0.0;  // step actually used (t_end / steps)
  std::vector<double> x;
  std::vector<Frame> frames;
  std::vector<FrameDiagnostics> diagnostics;
  bool has_equilibrium = false;
  Equilibrium equilibrium;
  /// Some concentration went below -1e-9.
  bool undershoot = false;
};

/// Pointwise reaction terms of the Gray-Scott model.
std::pair<std::vector<double>, std::vector<double>> gray_scott_rhs(const std::vector<double>& c1,
                                                                   const std::vector<double>& c2,
                                                                   const GrayScottParams& p);

/// ETDRK4 integration with spectral transport. Throws Blowup when a field
/// exceeds 1e6 in magnitude or becomes non-finite.
SimTrajectory integrate(const SimConfig& cfg);

struct ModeInfo {
  int k = 0;  // 0 when the field has no non-DC power
  double zeta = 0.0;
  double power_fraction = 0.0;
};

ModeInfo dominant_mode(const std::vector<double>& frame, double L);

/// (1/N) sum_j f_j exp(-2 pi i k j / N).
Complex fourier_mode(const std::vector<double>& f, int k);

/// Spectral derivative of the given order on a periodic grid of length L.
std::vector<double> spectral_derivative(const std::vector<double>& f, double L, int order);

/// Rows "time,x,C1,C2" for every stored frame.
void write_trajectory_csv(std::ostream& os, const SimTrajectory& t);
/// Configuration, reproduction parameters and per-frame diagnostics with the
/// dominant mode of C1.
std::string trajectory_summary_json(const SimTrajectory& t);
/// Space-time matrix of one species (1 or 2): header row of x values, then
/// one row per frame starting with its time.
void write_spacetime_csv(std::ostream& os, const SimTrajectory& t, int species);

}  // namespace rdacert
