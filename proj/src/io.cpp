#include "rdacert/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rdacert/errors.hpp"
#include "rdacert/version.hpp"

namespace rdacert {
namespace {

using nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Locate the offending byte as line:column.
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << "line " << line << ", column " << col << ": malformed JSON";
    const std::string what = e.what();
    const auto pos = what.find("syntax error");
    if (pos != std::string::npos) os << " (" << what.substr(pos) << ")";
    throw SchemaError(os.str());
  }
}

std::string at(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw SchemaError((where.empty() ? "document" : where) + ": expected an object");
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) throw SchemaError("unknown key '" + at(where, it.key()) + "'");
  }
}

// Finite number or the strings "inf" / "-inf".
double real_value(const json& v, const std::string& where, bool allow_inf = false) {
  if (v.is_number()) return v.get<double>();
  if (allow_inf && v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw SchemaError(where + ": expected a number");
}

double number(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw SchemaError("missing key '" + at(where, key) + "'");
  return real_value(j.at(key), at(where, key));
}

double number_or(const json& j, const std::string& key, double fallback, const std::string& where) {
  return j.contains(key) ? real_value(j.at(key), at(where, key)) : fallback;
}

int integer_or(const json& j, const std::string& key, int fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw SchemaError(at(where, key) + ": expected an integer");
  return v.get<int>();
}

std::string string_or(const json& j, const std::string& key, const std::string& fallback,
                      const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string()) throw SchemaError(at(where, key) + ": expected a string");
  return j.at(key).get<std::string>();
}

bool bool_or(const json& j, const std::string& key, bool fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) throw SchemaError(at(where, key) + ": expected a boolean");
  return j.at(key).get<bool>();
}

std::vector<double> number_array(const json& v, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(real_value(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

json real_json(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return nullptr;
  return x;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXd matrix_value(const json& v, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected an array of rows");
  const auto r = static_cast<Eigen::Index>(v.size());
  Eigen::MatrixXd m(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const std::vector<double> row = number_array(v[i], where);
    if (static_cast<Eigen::Index>(row.size()) != r) throw SchemaError(where + ": matrix is not square");
    for (Eigen::Index j = 0; j < r; ++j) m(i, j) = row[j];
  }
  return m;
}

json coeffs_json(const RealPoly& p) { return json(p.coeffs()); }

json interval_json(const Interval& iv) {
  return {{"kind", kind_name(iv.kind)}, {"lo", real_json(iv.lo)}, {"hi", real_json(iv.hi)}};
}

Interval interval_value(const json& v, const std::string& where) {
  require_object(v, where);
  reject_unknown(v, {"kind", "lo", "hi"}, where);
  const std::string kind = string_or(v, "kind", "", where);
  if (kind == "global") return Interval::global();
  const double lo = real_value(v.value("lo", json()), at(where, "lo"), true);
  if (kind == "finite_interval") return Interval::finite(lo, real_value(v.value("hi", json()), at(where, "hi"), true));
  if (kind == "semi_infinite") return Interval::semi_infinite(lo);
  throw SchemaError(at(where, "kind") + ": unknown interval kind '" + kind + "'");
}

Interval zeta_interval_value(const json& v) {
  const std::string where = "zeta_interval";
  if (!v.is_array() || v.size() != 2) throw SchemaError(where + ": expected [lo, hi]");
  const double lo = real_value(v[0], where + "[0]");
  const double hi = real_value(v[1], where + "[1]", true);
  if (!(lo < hi)) throw BadInterval(where + ": need lo < hi");
  return std::isinf(hi) ? Interval::semi_infinite(lo) : Interval::finite(lo, hi);
}

json tolerances_json(const Tolerances& t) {
  return {{"eps_psd", t.eps_psd},
          {"eps_res_rel", t.eps_res_rel},
          {"eps_res_abs", t.eps_res_abs},
          {"marginal", t.marginal},
          {"dead_band", t.dead_band}};
}

Tolerances tolerances_value(const json& v) {
  const std::string where = "tolerances";
  require_object(v, where);
  reject_unknown(v, {"eps_psd", "eps_res_rel", "eps_res_abs", "marginal", "dead_band"}, where);
  Tolerances t;
  t.eps_psd = number_or(v, "eps_psd", t.eps_psd, where);
  t.eps_res_rel = number_or(v, "eps_res_rel", t.eps_res_rel, where);
  t.eps_res_abs = number_or(v, "eps_res_abs", t.eps_res_abs, where);
  t.marginal = number_or(v, "marginal", t.marginal, where);
  t.dead_band = number_or(v, "dead_band", t.dead_band, where);
  return t;
}

GrayScottParams params_value(const json& v, const std::string& where,
                             const std::set<std::string>& extra = {}) {
  require_object(v, where);
  std::set<std::string> allowed{"a", "b", "d", "v1", "v2"};
  allowed.insert(extra.begin(), extra.end());
  reject_unknown(v, allowed, where);
  GrayScottParams p;
  p.a = number(v, "a", where);
  p.b = number(v, "b", where);
  p.d = number(v, "d", where);
  p.v1 = number_or(v, "v1", 0.0, where);
  p.v2 = number_or(v, "v2", 0.0, where);
  return p;
}

json params_json(const GrayScottParams& p) {
  return {{"a", p.a}, {"b", p.b}, {"d", p.d}, {"v1", p.v1}, {"v2", p.v2}};
}

SystemDocument system_value(const json& j) {
  require_object(j, "");
  SystemDocument doc;
  if (j.contains("model")) {
    if (!j.at("model").is_string() || j.at("model").get<std::string>() != "gray-scott") {
      throw SchemaError("model: only \"gray-scott\" is supported");
    }
    const GrayScottParams p = params_value(j, "", {"model", "zeta_interval"});
    p.validate();
    doc.spec = gray_scott_jacobian(p);
  } else {
    reject_unknown(j, {"n", "A", "D", "V", "zeta_interval"}, "");
    if (!j.contains("n") || !j.at("n").is_number_integer()) throw SchemaError("n: expected an integer");
    const int n = j.at("n").get<int>();
    if (n < 1) throw InvalidSpec("n must be positive");
    for (const char* key : {"A", "D", "V"}) {
      if (!j.contains(key)) throw SchemaError(std::string("missing key '") + key + "'");
    }
    const std::vector<double> a = number_array(j.at("A"), "A");
    const std::vector<double> d = number_array(j.at("D"), "D");
    const std::vector<double> v = number_array(j.at("V"), "V");
    if (a.size() != static_cast<std::size_t>(n) * n) throw NonSquare("A must have n*n entries");
    if (d.size() != static_cast<std::size_t>(n) || v.size() != static_cast<std::size_t>(n)) {
      throw ShapeMismatch("D and V must have n entries");
    }
    Eigen::MatrixXd A(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) A(r, c) = a[static_cast<std::size_t>(r) * n + c];
    doc.spec = SystemSpec::generic(A, Eigen::Map<const Eigen::VectorXd>(d.data(), n),
                                   Eigen::Map<const Eigen::VectorXd>(v.data(), n));
  }
  if (j.contains("zeta_interval")) doc.zeta_interval = zeta_interval_value(j.at("zeta_interval"));
  return doc;
}

json system_json(const SystemDocument& doc) {
  json j;
  if (doc.spec.gray_scott) {
    j = params_json(*doc.spec.gray_scott);
    j["model"] = "gray-scott";
  } else {
    const SystemSpec& s = doc.spec;
    std::vector<double> a;
    for (int r = 0; r < s.n(); ++r)
      for (int c = 0; c < s.n(); ++c) a.push_back(s.A(r, c));
    j = {{"n", s.n()},
         {"A", a},
         {"D", std::vector<double>(s.D.data(), s.D.data() + s.n())},
         {"V", std::vector<double>(s.V.data(), s.V.data() + s.n())}};
  }
  if (doc.zeta_interval) j["zeta_interval"] = {doc.zeta_interval->lo, real_json(doc.zeta_interval->hi)};
  return j;
}

json certificate_json(const SosCertificate& c) {
  json j{{"domain", interval_json(c.domain)}, {"min_eig", c.min_eig}, {"coeff_residual", c.coeff_residual}};
  if (c.domain.kind == Interval::Kind::kGlobal) {
    j["G"] = matrix_json(c.G);
  } else {
    j["K"] = matrix_json(c.K);
    j["L"] = matrix_json(c.L);
  }
  return j;
}

SosCertificate certificate_value(const json& v, const std::string& where) {
  require_object(v, where);
  reject_unknown(v, {"domain", "G", "K", "L", "min_eig", "coeff_residual"}, where);
  SosCertificate c;
  if (!v.contains("domain")) throw SchemaError("missing key '" + at(where, "domain") + "'");
  c.domain = interval_value(v.at("domain"), at(where, "domain"));
  if (c.domain.kind == Interval::Kind::kGlobal) {
    if (!v.contains("G")) throw SchemaError("missing key '" + at(where, "G") + "'");
    c.G = matrix_value(v.at("G"), at(where, "G"));
  } else {
    if (!v.contains("K") || !v.contains("L")) throw SchemaError(where + ": K and L are required");
    c.K = matrix_value(v.at("K"), at(where, "K"));
    c.L = matrix_value(v.at("L"), at(where, "L"));
  }
  return c;
}

json verdict_json(const FeasibilityVerdict& v, bool certificates) {
  json j{{"status", to_string(v.status)}, {"margin", v.margin}, {"iterations", v.iterations}};
  if (!v.note.empty()) j["note"] = v.note;
  if (certificates && v.certificate) j["certificate"] = certificate_json(*v.certificate);
  return j;
}

json band_json(const FrequencyBand& b) {
  return {{"lo", b.lo},
          {"hi", real_json(b.hi)},
          {"minor", b.minor_index},
          {"wavelength_lo", real_json(b.wavelength_lo)},
          {"wavelength_hi", real_json(b.wavelength_hi)},
          {"confirmed", b.confirmed}};
}

json transcript_json(const std::vector<BandCheck>& checks) {
  json out = json::array();
  for (const BandCheck& c : checks) {
    out.push_back({{"minor", c.minor_index},
                   {"interval", interval_json(c.interval)},
                   {"expected", c.expect_feasible ? "feasible" : "infeasible"},
                   {"result", to_string(c.result.status)},
                   {"margin", c.result.margin},
                   {"consistent", c.consistent()}});
  }
  return out;
}

}  // namespace

SystemDocument parse_system_document(const std::string& text) { return system_value(parse_text(text)); }

std::string system_document_json(const SystemDocument& doc) { return system_json(doc).dump(2); }

double parse_length(const std::string& raw) {
  std::string s;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(c));
  }
  double factor = 1.0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    s.resize(s.size() - 2);
    if (!s.empty() && s.back() == '*') s.pop_back();
    if (s.empty()) s = "1";
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InputError("cannot parse length '" + raw + "'");
  value *= factor;
  if (!(value > 0.0) || !std::isfinite(value)) throw InputError("length must be positive: '" + raw + "'");
  return value;
}

std::string report_to_json(const StabilityReport& r, const std::optional<Interval>& zeta_interval,
                           const ReportOptions& opts) {
  json minors = json::array();
  for (const MinorReport& m : r.per_minor) {
    json sturm{{"nonnegative", m.sturm.nonnegative}, {"roots", m.sturm.roots}, {"degenerate", m.sturm.degenerate}};
    if (m.sturm.witness) sturm["witness"] = *m.sturm.witness;
    minors.push_back({{"index", m.index},
                      {"coefficients", coeffs_json(m.delta)},
                      {"feasibility", verdict_json(m.sdp, opts.certificates)},
                      {"sturm", sturm},
                      {"minimum", real_json(m.minimum)},
                      {"value_at_zero", m.value_at_zero},
                      {"in_dead_band", m.in_dead_band}});
  }
  json bands = json::array();
  for (const FrequencyBand& b : r.bands) bands.push_back(band_json(b));
  json doc{{"version", kVersion},
           {"verdict", to_string(r.verdict)},
           {"spec", system_json({r.spec, zeta_interval})},
           {"domain", interval_json(r.domain)},
           {"tolerances", tolerances_json(r.tol)},
           {"calibration_scalar", {{"re", r.calibration_scalar.real()}, {"im", r.calibration_scalar.imag()}}},
           {"calibration_probed", r.minors.calibration_probed},
           {"homogeneous_mode_stable", r.homogeneous_mode_stable},
           {"minors", minors},
           {"witness", nullptr},
           {"bands", bands},
           {"oracle",
            {{"sturm_agrees", r.oracle.sturm_agrees},
             {"eigen_agrees", r.oracle.eigen_agrees},
             {"grid_points", r.oracle.grid_points},
             {"grid_lo", r.oracle.grid_lo},
             {"grid_hi", r.oracle.grid_hi},
             {"max_abscissa", r.oracle.max_abscissa},
             {"zeta_at_max", r.oracle.zeta_at_max}}}};
  if (r.witness) {
    doc["witness"] = {{"minor", r.witness->minor_index},
                      {"zeta", r.witness->zeta},
                      {"value", r.witness->value},
                      {"eig_real", r.witness->eig_real},
                      {"eig_imag", r.witness->eig_imag}};
  }
  if (opts.transcript) doc["band_transcript"] = transcript_json(r.band_transcript);
  return doc.dump(2);
}

std::string bands_to_json(const BandAnalysis& bands, const Tolerances& tol,
                          std::optional<double> domain_length, bool transcript) {
  json list = json::array();
  for (const FrequencyBand& b : bands.bands) {
    json j = band_json(b);
    if (domain_length) {
      j["modes"] = std::isinf(b.hi) ? json("unbounded") : json(quantized_modes(b, *domain_length));
    }
    list.push_back(j);
  }
  json doc{{"version", kVersion}, {"zeta_max", bands.zeta_max}, {"tolerances", tolerances_json(tol)}, {"bands", list}};
  if (domain_length) doc["domain_length"] = *domain_length;
  if (transcript) doc["transcript"] = transcript_json(bands.transcript);
  return doc.dump(2);
}

SweepConfig parse_sweep_config(const std::string& text) {
  const json j = parse_text(text);
  require_object(j, "");
  reject_unknown(j, {"base", "axes", "coupling", "threads", "checkpoint", "bands", "outputs"}, "");
  SweepConfig cfg;
  cfg.options.coupling = coupling_from_string(string_or(j, "coupling", "none", ""));
  if (!j.contains("base")) throw SchemaError("missing key 'base'");
  cfg.base = params_value(j.at("base"), "base", {"v"});
  if (j.at("base").contains("v")) {
    const double v = number(j.at("base"), "v", "base");
    cfg.base.v2 = v;
    cfg.base.v1 = cfg.options.coupling == Coupling::kStokesEinstein ? cfg.base.d * v : v;
  }
  if (!j.contains("axes") || !j.at("axes").is_array() || j.at("axes").empty()) {
    throw SchemaError("axes: expected a non-empty array");
  }
  static const std::set<std::string> names{"a", "b", "d", "v1", "v2", "v"};
  for (std::size_t i = 0; i < j.at("axes").size(); ++i) {
    const json& a = j.at("axes")[i];
    const std::string where = "axes[" + std::to_string(i) + "]";
    require_object(a, where);
    reject_unknown(a, {"name", "values", "lo", "hi", "n"}, where);
    SweepAxis axis;
    axis.name = string_or(a, "name", "", where);
    if (!names.count(axis.name)) throw SchemaError(at(where, "name") + ": unknown parameter '" + axis.name + "'");
    if (a.contains("values")) {
      if (a.contains("lo") || a.contains("hi") || a.contains("n")) {
        throw SchemaError(where + ": give either values or lo/hi/n");
      }
      axis.values = number_array(a.at("values"), at(where, "values"));
    } else {
      const int n = integer_or(a, "n", 0, where);
      if (n < 1) throw SchemaError(at(where, "n") + ": expected a positive integer");
      axis.values = linspace(number(a, "lo", where), number(a, "hi", where), n);
    }
    if (axis.values.empty()) throw SchemaError(at(where, "values") + ": empty grid");
    for (double v : axis.values) {
      if (!std::isfinite(v)) throw InvalidSpec(where + ": grid values must be finite");
    }
    cfg.axes.push_back(std::move(axis));
  }
  cfg.options.threads = integer_or(j, "threads", 0, "");
  if (cfg.options.threads < 0) throw SchemaError("threads: must be >= 0");
  cfg.options.checkpoint_path = string_or(j, "checkpoint", "", "");
  cfg.options.compute_bands = bool_or(j, "bands", true, "");
  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    require_object(o, "outputs");
    reject_unknown(o, {"csv", "json", "map"}, "outputs");
    cfg.outputs.csv = string_or(o, "csv", "", "outputs");
    cfg.outputs.json = string_or(o, "json", "", "outputs");
    cfg.outputs.map = string_or(o, "map", "", "outputs");
  }
  return cfg;
}

SimulateConfig parse_simulate_config(const std::string& text) {
  const json j = parse_text(text);
  require_object(j, "");
  reject_unknown(j, {"params", "L", "N", "t_end", "dt", "snapshot_every", "ic", "outputs"}, "");
  SimulateConfig cfg;
  SimConfig& s = cfg.sim;
  if (!j.contains("params")) throw SchemaError("missing key 'params'");
  s.params = params_value(j.at("params"), "params");
  if (j.contains("L")) {
    const json& l = j.at("L");
    if (l.is_string()) {
      try {
        s.L = parse_length(l.get<std::string>());
      } catch (const InputError& e) {
        throw SchemaError(std::string("L: ") + e.what());
      }
    } else {
      s.L = real_value(l, "L");
    }
  }
  s.N = integer_or(j, "N", s.N, "");
  s.t_end = number_or(j, "t_end", s.t_end, "");
  s.dt = number_or(j, "dt", s.dt, "");
  s.snapshot_every = integer_or(j, "snapshot_every", s.snapshot_every, "");
  if (j.contains("ic")) {
    const json& ic = j.at("ic");
    require_object(ic, "ic");
    const std::string kind = string_or(ic, "kind", "method", "ic");
    if (kind == "method") {
      reject_unknown(ic, {"kind", "base1", "base2", "amplitude", "modes"}, "ic");
      s.ic.kind = InitialCondition::Kind::kMethod;
      s.ic.base1 = number_or(ic, "base1", s.ic.base1, "ic");
      s.ic.base2 = number_or(ic, "base2", s.ic.base2, "ic");
      s.ic.method_amplitude = number_or(ic, "amplitude", s.ic.method_amplitude, "ic");
      s.ic.method_modes = integer_or(ic, "modes", s.ic.method_modes, "ic");
      if (s.ic.method_modes < 0) throw SchemaError("ic.modes: must be >= 0");
    } else if (kind == "mode") {
      reject_unknown(ic, {"kind", "k", "amplitude"}, "ic");
      s.ic.kind = InitialCondition::Kind::kEquilibriumMode;
      s.ic.mode = integer_or(ic, "k", s.ic.mode, "ic");
      s.ic.amplitude = number_or(ic, "amplitude", s.ic.amplitude, "ic");
    } else {
      throw SchemaError("ic.kind: expected \"method\" or \"mode\"");
    }
  }
  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    require_object(o, "outputs");
    reject_unknown(o, {"csv", "summary", "spacetime_c1", "spacetime_c2"}, "outputs");
    cfg.outputs.csv = string_or(o, "csv", "", "outputs");
    cfg.outputs.summary = string_or(o, "summary", "", "outputs");
    cfg.outputs.spacetime_c1 = string_or(o, "spacetime_c1", "", "outputs");
    cfg.outputs.spacetime_c2 = string_or(o, "spacetime_c2", "", "outputs");
  }
  s.validate();
  return cfg;
}

CertifyCheckResult certify_check(const std::string& report_text, const std::optional<Tolerances>& tol_override) {
  const json j = parse_text(report_text);
  require_object(j, "");
  for (const char* key : {"spec", "minors", "verdict"}) {
    if (!j.contains(key)) throw SchemaError(std::string("missing key '") + key + "'");
  }
  const SystemDocument doc = system_value(j.at("spec"));
  const Tolerances tol = tol_override ? *tol_override
                         : j.contains("tolerances") ? tolerances_value(j.at("tolerances"))
                                                    : Tolerances{};
  const MinorSet minors = hurwitz_minors(doc.spec);
  const json& stored = j.at("minors");
  if (!stored.is_array()) throw SchemaError("minors: expected an array");

  CertifyCheckResult out;
  auto fail = [&](const std::string& msg) { out.failures.push_back(msg); };
  std::vector<bool> certified(static_cast<std::size_t>(minors.n), false);
  for (std::size_t e = 0; e < stored.size(); ++e) {
    const std::string where = "minors[" + std::to_string(e) + "]";
    const json& m = stored[e];
    require_object(m, where);
    const int idx = integer_or(m, "index", 0, where);
    if (idx < 1 || idx > minors.n) {
      fail(where + ": minor index out of range");
      continue;
    }
    const RealPoly& delta = minors[idx - 1];
    const std::string label = "minor " + std::to_string(idx);
    if (m.contains("coefficients")) {
      const std::vector<double> c = number_array(m.at("coefficients"), at(where, "coefficients"));
      const double scale = 1.0 + delta.max_abs_coeff();
      double diff = 0.0;
      const int len = std::max(static_cast<int>(c.size()), delta.degree() + 1);
      for (int k = 0; k < len; ++k) {
        diff = std::max(diff, std::abs((k < static_cast<int>(c.size()) ? c[k] : 0.0) - delta[k]));
      }
      if (diff > 1e-9 * scale) fail(label + ": stored coefficients differ from the recomputed minor");
    }
    if (!m.contains("feasibility") || !m.at("feasibility").contains("certificate")) continue;
    const SosCertificate cert = certificate_value(m.at("feasibility").at("certificate"), at(where, "certificate"));
    ++out.certificates_checked;
    try {
      const VerifyReport v = verify_certificate(cert, delta, tol);
      if (v.pass) {
        certified[static_cast<std::size_t>(idx - 1)] = true;
      } else {
        fail(label + ": " + v.reason);
      }
    } catch (const InputError& e) {
      fail(label + ": " + e.what());
    }
  }

  const std::string verdict = j.at("verdict").is_string() ? j.at("verdict").get<std::string>() : "";
  bool checked_witness = false;
  if (verdict == "stable") {
    for (int i = 0; i < minors.n; ++i) {
      if (!certified[static_cast<std::size_t>(i)]) {
        fail("stable verdict without a valid certificate for minor " + std::to_string(i + 1));
      }
    }
  } else if (verdict == "unstable") {
    const json w = j.value("witness", json());
    if (!w.is_object()) {
      fail("unstable verdict without a witness");
    } else {
      const int idx = integer_or(w, "minor", 0, "witness");
      const double zeta = number(w, "zeta", "witness");
      if (idx < 1 || idx > minors.n) {
        fail("witness: minor index out of range");
      } else if (!(minors[idx - 1](zeta) < 0.0)) {
        fail("witness: minor " + std::to_string(idx) + " is not negative at the stored frequency");
      }
      checked_witness = true;
    }
  } else if (verdict != "marginal") {
    fail("unknown verdict '" + verdict + "'");
  }
  if (out.certificates_checked == 0 && !checked_witness && out.failures.empty()) {
    fail("report carries nothing to verify");
  }
  out.pass = out.failures.empty();
  return out;
}

}  // namespace rdacert
