#include "rdacert/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rdacert/errors.hpp"
#include "rdacert/version.hpp"

namespace rdacert {
namespace {

using nlohmann::json;

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void set_param(GrayScottParams& p, const std::string& name, double value) {
  if (name == "a") p.a = value;
  else if (name == "b") p.b = value;
  else if (name == "d") p.d = value;
  else if (name == "v1") p.v1 = value;
  else if (name == "v2") p.v2 = value;
  else if (name == "v") p.v1 = p.v2 = value;
  else throw InputError("unknown sweep axis '" + name + "'");
}

json optional_number(const std::optional<double>& x) {
  if (!x) return nullptr;
  if (std::isinf(*x)) return "inf";
  return *x;
}

std::optional<double> read_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (j.at(key).is_string()) return std::numeric_limits<double>::infinity();
  return j.at(key).get<double>();
}

json cell_to_json(const SweepCell& c) {
  return json{{"index", c.index},
              {"a", c.params.a},
              {"b", c.params.b},
              {"d", c.params.d},
              {"v1", c.params.v1},
              {"v2", c.params.v2},
              {"status", to_string(c.status)},
              {"witness_zeta", optional_number(c.witness_zeta)},
              {"band_lo", optional_number(c.band_lo)},
              {"band_hi", optional_number(c.band_hi)},
              {"error", c.error}};
}

bool same_params(const GrayScottParams& x, const GrayScottParams& y) {
  auto eq = [](double p, double q) { return std::abs(p - q) <= 1e-12 * (1.0 + std::abs(q)); };
  return eq(x.a, y.a) && eq(x.b, y.b) && eq(x.d, y.d) && eq(x.v1, y.v1) && eq(x.v2, y.v2);
}

// Completed cells from an existing checkpoint. A torn final line (from an
// interrupted run) is ignored.
std::map<std::size_t, SweepCell> load_checkpoint(const std::string& path) {
  std::map<std::size_t, SweepCell> done;
  std::ifstream in(path);
  if (!in) return done;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) continue;
    SweepCell c;
    try {
      c.index = j.at("index").get<std::size_t>();
      c.params = {j.at("a").get<double>(), j.at("b").get<double>(), j.at("d").get<double>(),
                  j.at("v1").get<double>(), j.at("v2").get<double>()};
      c.status = cell_status_from_string(j.at("status").get<std::string>());
      c.witness_zeta = read_optional(j, "witness_zeta");
      c.band_lo = read_optional(j, "band_lo");
      c.band_hi = read_optional(j, "band_hi");
      c.error = j.value("error", "");
    } catch (const json::exception& e) {
      throw SchemaError("checkpoint " + path + ": bad cell record (" + e.what() + ")");
    }
    done[c.index] = c;
  }
  return done;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw InputError("grid needs at least one point");
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) v[k] = n == 1 ? lo : lo + (hi - lo) * k / (n - 1);
  return v;
}

std::string to_string(Coupling c) {
  return c == Coupling::kStokesEinstein ? "stokes_einstein" : "none";
}

Coupling coupling_from_string(const std::string& s) {
  if (s == "none") return Coupling::kNone;
  if (s == "stokes_einstein") return Coupling::kStokesEinstein;
  throw InputError("unknown coupling rule '" + s + "' (expected none or stokes_einstein)");
}

std::string to_string(CellStatus s) {
  switch (s) {
    case CellStatus::kStable: return "stable";
    case CellStatus::kUnstable: return "unstable";
    case CellStatus::kMarginal: return "marginal";
    case CellStatus::kNoEquilibrium: return "no-equilibrium";
    case CellStatus::kError: return "error";
  }
  return "error";
}

CellStatus cell_status_from_string(const std::string& s) {
  for (CellStatus c : {CellStatus::kStable, CellStatus::kUnstable, CellStatus::kMarginal,
                       CellStatus::kNoEquilibrium, CellStatus::kError}) {
    if (to_string(c) == s) return c;
  }
  throw InputError("unknown cell status '" + s + "'");
}

GrayScottParams sweep_cell_params(const GrayScottParams& base, const std::vector<SweepAxis>& axes,
                                  Coupling coupling, std::size_t index) {
  GrayScottParams p = base;
  for (std::size_t a = axes.size(); a-- > 0;) {
    const std::size_t len = axes[a].values.size();
    set_param(p, axes[a].name, axes[a].values[index % len]);
    index /= len;
  }
  if (coupling == Coupling::kStokesEinstein) p.v1 = p.d * p.v2;
  return p;
}

SweepCell evaluate_cell(const GrayScottParams& p, bool compute_bands, const Tolerances& tol) {
  SweepCell c;
  c.params = p;
  try {
    p.validate();
    if (p.discriminant() < 0.0) {
      c.status = CellStatus::kNoEquilibrium;
      return c;
    }
    AnalysisOptions opts;
    opts.sos.tol = tol;
    opts.compute_bands = compute_bands;
    opts.confirm_bands = false;
    const StabilityReport r = stability_verdict(gray_scott_jacobian(p), opts);
    c.status = r.verdict == Verdict::kStable     ? CellStatus::kStable
               : r.verdict == Verdict::kUnstable ? CellStatus::kUnstable
                                                 : CellStatus::kMarginal;
    if (r.witness) c.witness_zeta = r.witness->zeta;
    if (!r.bands.empty()) {
      c.band_lo = r.bands.front().lo;
      c.band_hi = r.bands.front().hi;
    }
  } catch (const NoRealEquilibrium&) {
    c.status = CellStatus::kNoEquilibrium;
  } catch (const std::exception& e) {
    c.status = CellStatus::kError;
    c.error = e.what();
  }
  return c;
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RDACERT_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

SweepResult parameter_sweep(const GrayScottParams& base, const std::vector<SweepAxis>& axes,
                            const SweepOptions& opts) {
  SweepResult res;
  res.base = base;
  res.coupling = opts.coupling;
  res.axes = axes;
  std::size_t total = 1;
  for (const SweepAxis& a : axes) {
    if (a.values.empty()) throw InputError("sweep axis '" + a.name + "' has no values");
    for (double v : a.values) {
      if (!std::isfinite(v)) throw InputError("sweep axis '" + a.name + "' has a non-finite value");
    }
    GrayScottParams probe;
    set_param(probe, a.name, 0.0);  // validates the name
    total *= a.values.size();
  }
  res.cells.resize(total);
  std::vector<bool> have(total, false);

  if (!opts.checkpoint_path.empty()) {
    for (auto& [idx, cell] : load_checkpoint(opts.checkpoint_path)) {
      if (idx >= total) throw InputError("checkpoint cell index beyond the sweep grid");
      if (!same_params(cell.params, sweep_cell_params(base, axes, opts.coupling, idx))) {
        throw InputError("checkpoint " + opts.checkpoint_path + " belongs to a different sweep");
      }
      res.cells[idx] = cell;
      have[idx] = true;
      ++res.resumed;
    }
  }

  std::ofstream ckpt;
  if (!opts.checkpoint_path.empty()) {
    ckpt.open(opts.checkpoint_path, std::ios::app);
    if (!ckpt) throw InputError("cannot open checkpoint " + opts.checkpoint_path);
  }
  std::mutex io;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      if (have[i]) continue;
      SweepCell c = evaluate_cell(sweep_cell_params(base, axes, opts.coupling, i),
                                  opts.compute_bands, opts.tol);
      c.index = i;
      res.cells[i] = c;
      if (ckpt.is_open()) {
        const std::string line = cell_to_json(c).dump();
        std::lock_guard<std::mutex> lock(io);
        ckpt << line << '\n';
        ckpt.flush();
      }
    }
  };
  const int n = std::min<std::size_t>(worker_count(opts.threads), std::max<std::size_t>(total, 1));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  return res;
}

void write_sweep_csv(std::ostream& os, const SweepResult& r) {
  os << "# rdacert " << kVersion << "\n";
  os << "index,a,b,d,v1,v2,status,witness_zeta,band_lo,band_hi\n";
  auto opt = [](const std::optional<double>& x) { return x ? fmt(*x) : std::string(); };
  for (const SweepCell& c : r.cells) {
    os << c.index << ',' << fmt(c.params.a) << ',' << fmt(c.params.b) << ',' << fmt(c.params.d)
       << ',' << fmt(c.params.v1) << ',' << fmt(c.params.v2) << ',' << to_string(c.status) << ','
       << opt(c.witness_zeta) << ',' << opt(c.band_lo) << ',' << opt(c.band_hi) << '\n';
  }
}

std::string sweep_to_json(const SweepResult& r) {
  json axes = json::array();
  for (const SweepAxis& a : r.axes) axes.push_back({{"name", a.name}, {"values", a.values}});
  json cells = json::array();
  std::map<std::string, std::size_t> counts;
  for (const SweepCell& c : r.cells) {
    cells.push_back(cell_to_json(c));
    ++counts[to_string(c.status)];
  }
  json doc{{"version", kVersion},
           {"base", {{"a", r.base.a}, {"b", r.base.b}, {"d", r.base.d}, {"v1", r.base.v1},
                     {"v2", r.base.v2}}},
           {"coupling", to_string(r.coupling)},
           {"axes", axes},
           {"counts", counts},
           {"cells", cells}};
  return doc.dump(2);
}

void write_sweep_map_csv(std::ostream& os, const SweepResult& r) {
  if (r.axes.size() != 2) throw InputError("map output needs exactly two sweep axes");
  const SweepAxis& rows = r.axes[0];
  const SweepAxis& cols = r.axes[1];
  os << "# rdacert " << kVersion << "\n";
  os << rows.name << "\\" << cols.name;
  for (double c : cols.values) os << ',' << fmt(c);
  os << '\n';
  for (std::size_t i = 0; i < rows.values.size(); ++i) {
    os << fmt(rows.values[i]);
    for (std::size_t j = 0; j < cols.values.size(); ++j) {
      const SweepCell& c = r.cells[i * cols.values.size() + j];
      int code = 0;
      switch (c.status) {
        case CellStatus::kStable: code = 0; break;
        case CellStatus::kUnstable: code = 1; break;
        case CellStatus::kMarginal: code = 2; break;
        case CellStatus::kNoEquilibrium: code = -1; break;
        case CellStatus::kError: code = -2; break;
      }
      os << ',' << code;
    }
    os << '\n';
  }
}

}  // namespace rdacert
