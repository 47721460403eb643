// rdacert command-line front end.
//
// Exit codes: 0 completed, 1 certificate check failed, 2 input error,
// 3 internal error or oracle disagreement. Verdicts are reported in JSON only.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rdacert/analysis.hpp"
#include "rdacert/errors.hpp"
#include "rdacert/io.hpp"
#include "rdacert/simulator.hpp"
#include "rdacert/sweep.hpp"
#include "rdacert/version.hpp"

namespace {

using namespace rdacert;

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

template <typename Fn>
void write_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  fn(out);
}

void write_text(const std::string& path, const std::string& text) {
  write_output(path, [&](std::ostream& os) { os << text << '\n'; });
}

struct TolFlags {
  Tolerances tol;
  bool any = false;

  void add(CLI::App* app) {
    auto mark = [this](double) { any = true; };
    app->add_option_function<double>("--eps-psd", [this, mark](double v) { tol.eps_psd = v; mark(v); },
                                      "Gram matrix eigenvalue floor");
    app->add_option_function<double>("--eps-res", [this, mark](double v) { tol.eps_res_rel = v; mark(v); },
                                     "relative coefficient residual bound");
    app->add_option_function<double>("--eps-res-abs",
                                     [this, mark](double v) { tol.eps_res_abs = v; mark(v); },
                                     "absolute coefficient residual bound (replaces the relative one)");
    app->add_option_function<double>("--dead-band", [this, mark](double v) { tol.dead_band = v; mark(v); },
                                     "minor values treated as zero");
    app->add_option_function<double>("--marginal", [this, mark](double v) { tol.marginal = v; mark(v); },
                                     "SDP margin below which verdicts are marginal");
  }
  void check() const {
    if (!(tol.eps_psd >= 0.0) || !(tol.eps_res_rel >= 0.0) || !(tol.eps_res_abs >= 0.0) ||
        !(tol.dead_band >= 0.0) || !(tol.marginal > 0.0)) {
      throw InputError("tolerances must be nonnegative (marginal positive)");
    }
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Stability certificates for linearized reaction-diffusion-advection systems"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Stability verdict with certificates and oracle checks");
  std::string analyze_spec, analyze_out;
  bool with_certs = false, with_transcript = false, no_bands = false;
  TolFlags analyze_tol;
  analyze->add_option("spec", analyze_spec, "system document (JSON, '-' for stdin)")->required();
  analyze->add_flag("--certificates", with_certs, "include Gram matrices of feasible minors");
  analyze->add_flag("--transcript", with_transcript, "include band confirmation checks");
  analyze->add_flag("--no-bands", no_bands, "skip band identification");
  analyze->add_option("-o,--output", analyze_out, "report path (default stdout)");
  analyze_tol.add(analyze);

  // band
  auto* band = app.add_subcommand("band", "Destabilizing frequency bands and wavelengths");
  std::string band_spec, band_out, band_modes;
  double resolution = 1e-3;
  bool verbose = false;
  TolFlags band_tol;
  band->add_option("spec", band_spec, "system document (JSON, '-' for stdin)")->required();
  band->add_option("--resolution", resolution, "merge gaps narrower than this")->check(CLI::PositiveNumber);
  band->add_flag("-v,--verbose", verbose, "include the interval feasibility transcript");
  band->add_option("--modes", band_modes, "domain length for mode numbers, e.g. 30pi");
  band->add_option("-o,--output", band_out, "output path (default stdout)");
  band_tol.add(band);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Parameter map of stability verdicts");
  std::string sweep_cfg, sweep_csv, sweep_json, sweep_map, sweep_checkpoint;
  int sweep_threads = -1;
  TolFlags sweep_tol;
  sweep->add_option("config", sweep_cfg, "sweep configuration (JSON)")->required();
  sweep->add_option("--csv", sweep_csv, "per-cell CSV path (default: config, else stdout)");
  sweep->add_option("--json", sweep_json, "JSON result path");
  sweep->add_option("--map", sweep_map, "two-axis map CSV path");
  sweep->add_option("--checkpoint", sweep_checkpoint, "newline-delimited JSON checkpoint");
  sweep->add_option("--threads", sweep_threads, "worker count (0: RDACERT_THREADS or hardware)")
      ->check(CLI::NonNegativeNumber);
  sweep_tol.add(sweep);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Integrate the Gray-Scott model with advection");
  std::string sim_cfg, sim_csv, sim_summary, sim_st1, sim_st2;
  simulate->add_option("config", sim_cfg, "simulation configuration (JSON)")->required();
  simulate->add_option("--csv", sim_csv, "trajectory CSV path");
  simulate->add_option("--summary", sim_summary, "summary JSON path (default: config, else stdout)");
  simulate->add_option("--spacetime-c1", sim_st1, "space-time CSV of C1");
  simulate->add_option("--spacetime-c2", sim_st2, "space-time CSV of C2");

  // certify-check
  auto* check = app.add_subcommand("certify-check", "Re-verify the certificates stored in a report");
  std::string check_report;
  TolFlags check_tol;
  check->add_option("report", check_report, "report produced by 'analyze --certificates'")->required();
  check_tol.add(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (analyze->parsed()) {
    analyze_tol.check();
    const SystemDocument doc = parse_system_document(read_input(analyze_spec));
    AnalysisOptions o;
    o.sos.tol = analyze_tol.tol;
    o.zeta_interval = doc.zeta_interval;
    o.compute_bands = !no_bands;
    const StabilityReport r = stability_verdict(doc.spec, o);
    write_text(analyze_out, report_to_json(r, doc.zeta_interval,
                                           {.certificates = with_certs, .transcript = with_transcript}));
    return 0;
  }

  if (band->parsed()) {
    band_tol.check();
    const SystemDocument doc = parse_system_document(read_input(band_spec));
    std::optional<double> length;
    if (!band_modes.empty()) length = parse_length(band_modes);
    BandOptions o;
    o.resolution = resolution;
    o.sos.tol = band_tol.tol;
    const BandAnalysis b = analyze_bands(hurwitz_minors(doc.spec), o);
    write_text(band_out, bands_to_json(b, band_tol.tol, length, verbose));
    return 0;
  }

  if (sweep->parsed()) {
    sweep_tol.check();
    SweepConfig cfg = parse_sweep_config(read_input(sweep_cfg));
    if (sweep_threads >= 0) cfg.options.threads = sweep_threads;
    if (!sweep_checkpoint.empty()) cfg.options.checkpoint_path = sweep_checkpoint;
    if (!sweep_csv.empty()) cfg.outputs.csv = sweep_csv;
    if (!sweep_json.empty()) cfg.outputs.json = sweep_json;
    if (!sweep_map.empty()) cfg.outputs.map = sweep_map;
    cfg.options.tol = sweep_tol.tol;
    const SweepResult r = parameter_sweep(cfg.base, cfg.axes, cfg.options);
    const bool to_stdout = cfg.outputs.csv.empty() && cfg.outputs.json.empty() && cfg.outputs.map.empty();
    if (!cfg.outputs.csv.empty() || to_stdout) {
      write_output(cfg.outputs.csv, [&](std::ostream& os) { write_sweep_csv(os, r); });
    }
    if (!cfg.outputs.json.empty()) write_text(cfg.outputs.json, sweep_to_json(r));
    if (!cfg.outputs.map.empty()) {
      write_output(cfg.outputs.map, [&](std::ostream& os) { write_sweep_map_csv(os, r); });
    }
    return 0;
  }

  if (simulate->parsed()) {
    SimulateConfig cfg = parse_simulate_config(read_input(sim_cfg));
    if (!sim_csv.empty()) cfg.outputs.csv = sim_csv;
    if (!sim_summary.empty()) cfg.outputs.summary = sim_summary;
    if (!sim_st1.empty()) cfg.outputs.spacetime_c1 = sim_st1;
    if (!sim_st2.empty()) cfg.outputs.spacetime_c2 = sim_st2;
    const SimTrajectory t = integrate(cfg.sim);
    const SimulateOutputs& out = cfg.outputs;
    if (!out.csv.empty()) write_output(out.csv, [&](std::ostream& os) { write_trajectory_csv(os, t); });
    if (!out.spacetime_c1.empty()) {
      write_output(out.spacetime_c1, [&](std::ostream& os) { write_spacetime_csv(os, t, 1); });
    }
    if (!out.spacetime_c2.empty()) {
      write_output(out.spacetime_c2, [&](std::ostream& os) { write_spacetime_csv(os, t, 2); });
    }
    write_text(out.summary, trajectory_summary_json(t));
    return 0;
  }

  if (check->parsed()) {
    check_tol.check();
    const std::optional<Tolerances> tol = check_tol.any ? std::optional(check_tol.tol) : std::nullopt;
    const CertifyCheckResult res = certify_check(read_input(check_report), tol);
    std::cout << (res.pass ? "pass" : "fail") << ": " << res.certificates_checked << " certificate(s) checked\n";
    for (const std::string& f : res.failures) std::cout << "  " << f << '\n';
    return res.pass ? 0 : 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const rdacert::InputError& e) {
    std::cerr << "rdacert: input error: " << e.what() << '\n';
    return 2;
  } catch (const rdacert::PipelineDisagreement& e) {
    std::cerr << "rdacert: oracle disagreement: " << e.what() << '\n';
    return 3;
  } catch (const rdacert::Blowup& e) {
    std::cerr << "rdacert: " << e.what() << " (t = " << e.time() << ")\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "rdacert: internal error: " << e.what() << '\n';
    return 3;
  }
}
