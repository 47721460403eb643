#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rdacert/hurwitz.hpp"
#include "rdacert/interval.hpp"
#include "rdacert/model.hpp"
#include "rdacert/sos.hpp"
#include "rdacert/sturm.hpp"
#include "rdacert/tolerances.hpp"

namespace rdacert {

enum class Verdict { kStable, kUnstable, kMarginal };
std::string to_string(Verdict v);

/// Frequencies where some minor is negative. wavelength_lo = 2 pi / hi and
/// wavelength_hi = 2 pi / lo (infinite when lo = 0).
struct FrequencyBand {
  double lo = 0.0;
  double hi = 0.0;
  int minor_index = 0;  // 1-based
  double wavelength_lo = 0.0;
  double wavelength_hi = 0.0;
  /// Every flanking Prop-2 check came out as expected.
  bool confirmed = false;
};

FrequencyBand make_band(double lo, double hi, int minor_index);

/// One interval feasibility check made while confirming a band.
struct BandCheck {
  int minor_index = 0;
  Interval interval;
  bool expect_feasible = true;
  FeasibilityVerdict result;
  bool consistent() const {
    return expect_feasible ? result.status == Feasibility::kFeasible
                           : result.status == Feasibility::kInfeasible;
  }
};

struct BandOptions {
  double resolution = 1e-3;  // gaps narrower than this are merged
  bool confirm = true;       // run the flanking Prop-2 checks
  SosOptions sos;
};

struct BandAnalysis {
  std::vector<FrequencyBand> bands;
  std::vector<BandCheck> transcript;
  double zeta_max = 0.0;
};

/// Sign structure of the minors on [0, zeta_max], with zeta_max the largest
/// Cauchy bound. Bands are reported for zeta >= 0 (the minors are even).
BandAnalysis analyze_bands(const MinorSet& minors, const BandOptions& opts = {});
std::vector<FrequencyBand> destabilizing_bands(const SystemSpec& spec, double resolution = 1e-3);

/// Modes k >= 1 of a periodic domain of length L with lo <= 2 pi k / L <= hi.
/// Throws InputError unless L > 0.
std::vector<int> quantized_modes(const FrequencyBand& band, double L);

struct Witness {
  int minor_index = 0;  // 1-based
  double zeta = 0.0;
  double value = 0.0;   // Delta_i(zeta) < 0
  /// Imaginary part of the dominant eigenvalue at zeta: zero for a
  /// stationary (Turing-type) instability. Diagnostic only.
  double eig_imag = 0.0;
  double eig_real = 0.0;
};

struct MinorReport {
  int index = 0;  // 1-based
  RealPoly delta;
  FeasibilityVerdict sdp;
  NonnegResult sturm;
  double minimum = 0.0;  // over the analysis domain
  double value_at_zero = 0.0;
  bool in_dead_band = false;
};

struct OracleSummary {
  bool sturm_agrees = true;
  bool eigen_agrees = true;
  int grid_points = 0;
  double grid_lo = 0.0;
  double grid_hi = 0.0;
  double max_abscissa = 0.0;
  double zeta_at_max = 0.0;
};

struct AnalysisOptions {
  SosOptions sos;
  std::optional<Interval> zeta_interval;  // default: all of R
  bool compute_bands = true;
  bool confirm_bands = true;
  double band_resolution = 1e-3;
  int oracle_points = 2001;
};

struct StabilityReport {
  SystemSpec spec;
  MinorSet minors;
  Interval domain;
  Verdict verdict = Verdict::kMarginal;
  std::vector<MinorReport> per_minor;
  std::optional<Witness> witness;
  bool homogeneous_mode_stable = false;
  std::vector<FrequencyBand> bands;
  std::vector<BandCheck> band_transcript;
  Complex calibration_scalar = 1.0;
  OracleSummary oracle;
  Tolerances tol;
};

/// Full pipeline with the Sturm and eigenvalue cross-checks. Throws
/// PipelineDisagreement when an oracle contradicts a verdict outside the
/// dead band.
StabilityReport stability_verdict(const SystemSpec& spec, const AnalysisOptions& opts = {});

}  // namespace rdacert
