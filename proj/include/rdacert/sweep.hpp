#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rdacert/analysis.hpp"
#include "rdacert/model.hpp"

namespace rdacert {

/// One swept parameter. Names: a, b, d, v1, v2, and v (the flow rate: sets
/// v2, and v1 through the coupling rule, or v1 = v without coupling).
struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

/// n evenly spaced values from lo to hi inclusive (n >= 1).
std::vector<double> linspace(double lo, double hi, int n);

enum class Coupling { kNone, kStokesEinstein };
std::string to_string(Coupling c);
Coupling coupling_from_string(const std::string& s);  // throws InputError

enum class CellStatus { kStable, kUnstable, kMarginal, kNoEquilibrium, kError };
std::string to_string(CellStatus s);
CellStatus cell_status_from_string(const std::string& s);  // throws InputError

struct SweepCell {
  std::size_t index = 0;
  GrayScottParams params;
  CellStatus status = CellStatus::kError;
  std::optional<double> witness_zeta;
  std::optional<double> band_lo;  // first band
  std::optional<double> band_hi;
  std::string error;
};

struct SweepOptions {
  Coupling coupling = Coupling::kNone;
  /// Worker count; 0 reads RDACERT_THREADS, then hardware concurrency.
  int threads = 0;
  /// Newline-delimited JSON, one completed cell per line. Existing lines
  /// are reused and new cells appended.
  std::string checkpoint_path;
  bool compute_bands = true;
  Tolerances tol;
};

struct SweepResult {
  GrayScottParams base;
  Coupling coupling = Coupling::kNone;
  std::vector<SweepAxis> axes;
  std::vector<SweepCell> cells;  // row-major, last axis fastest
  std::size_t resumed = 0;       // cells taken from the checkpoint
};

/// Parameters of cell `index` (row-major, last axis fastest).
GrayScottParams sweep_cell_params(const GrayScottParams& base, const std::vector<SweepAxis>& axes,
                                  Coupling coupling, std::size_t index);

/// Runs one verdict per cell. Per-cell failures are recorded in the cell.
SweepResult parameter_sweep(const GrayScottParams& base, const std::vector<SweepAxis>& axes,
                            const SweepOptions& opts = {});

/// Verdict of a single parameter point as recorded by the sweep.
SweepCell evaluate_cell(const GrayScottParams& p, bool compute_bands, const Tolerances& tol);

/// Bounded worker count from RDACERT_THREADS (>= 1), or `fallback`.
int worker_count(int requested);

/// CSV with a leading "# rdacert <version>" line, then one row per cell.
void write_sweep_csv(std::ostream& os, const SweepResult& r);
/// JSON document with axes, metadata and cells.
std::string sweep_to_json(const SweepResult& r);
/// Unstable-cell indicator grid for two-axis sweeps (rows: first axis).
void write_sweep_map_csv(std::ostream& os, const SweepResult& r);

}  // namespace rdacert
