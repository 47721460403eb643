#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rdacert/analysis.hpp"
#include "rdacert/simulator.hpp"
#include "rdacert/sweep.hpp"

namespace rdacert {

/// Parsed system document: a Gray-Scott parameter set or a generic
/// (A, D, V) triple, plus an optional frequency interval.
struct SystemDocument {
  SystemSpec spec;
  std::optional<Interval> zeta_interval;
};

/// All parsers throw SchemaError for malformed JSON (with line and column),
/// unknown keys, and wrong types, and InvalidSpec for out-of-range values.
SystemDocument parse_system_document(const std::string& text);
std::string system_document_json(const SystemDocument& doc);

/// Lengths such as "30pi", "2*pi", "pi" or "94.2".
double parse_length(const std::string& s);

struct ReportOptions {
  bool certificates = false;  // Gram matrices for every feasible minor
  bool transcript = false;    // band confirmation checks
};

std::string report_to_json(const StabilityReport& r, const std::optional<Interval>& zeta_interval,
                           const ReportOptions& opts = {});

/// Bands with wavelengths, optional mode lists for a domain length, and the
/// confirmation transcript.
std::string bands_to_json(const BandAnalysis& bands, const Tolerances& tol,
                          std::optional<double> domain_length, bool transcript);

struct SweepOutputs {
  std::string csv;
  std::string json;
  std::string map;
};

struct SweepConfig {
  GrayScottParams base;
  std::vector<SweepAxis> axes;
  SweepOptions options;
  SweepOutputs outputs;
};

/// {"base": {...}, "axes": [...], "coupling": ..., "threads": ...,
///  "checkpoint": ..., "bands": ..., "outputs": {...}}. A "v" entry in base
/// sets the flow rate through the coupling rule.
SweepConfig parse_sweep_config(const std::string& text);

struct SimulateOutputs {
  std::string csv;
  std::string summary;
  std::string spacetime_c1;
  std::string spacetime_c2;
};

struct SimulateConfig {
  SimConfig sim;
  SimulateOutputs outputs;
};

SimulateConfig parse_simulate_config(const std::string& text);

struct CertifyCheckResult {
  bool pass = false;
  int certificates_checked = 0;
  std::vector<std::string> failures;
};

/// Re-verifies every stored certificate of a report against minors rebuilt
/// from the embedded system document. `tol` overrides the echoed tolerances.
CertifyCheckResult certify_check(const std::string& report_text,
                                 const std::optional<Tolerances>& tol = std::nullopt);

}  // namespace rdacert
