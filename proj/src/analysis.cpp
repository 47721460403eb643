#include "rdacert/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rdacert/errors.hpp"

namespace rdacert {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Maximal run of negative sign of one minor, with its neighbouring knots.
struct Run {
  int minor = 0;
  double lo = 0.0, hi = 0.0;
  double left_knot = 0.0;   // start of the positive interval on the left
  bool left_is_root = false;
  double right_knot = kInf; // end of the positive interval on the right
  bool right_is_last = true;
  bool has_left = false;
};

// Dead band at zeta, relative to the size of the terms summed there.
double dead_band(const RealPoly& d, double zeta, const Tolerances& tol) {
  double scale = 0.0, power = 1.0;
  for (double c : d.coeffs()) {
    scale += std::abs(c) * power;
    power *= std::abs(zeta);
  }
  return tol.dead_band * std::max(1.0, scale);
}

std::vector<Run> negative_runs(const RealPoly& d, int minor, double zeta_max, const Tolerances& tol) {
  std::vector<double> knots{0.0};
  for (double r : real_roots(d, 0.0, zeta_max)) {
    if (r > knots.back()) knots.push_back(r);
  }
  if (zeta_max > knots.back()) knots.push_back(zeta_max);

  std::vector<Run> runs;
  const std::size_t segs = knots.size() - 1;
  std::size_t s = 0;
  while (s < segs) {
    const double mid = 0.5 * (knots[s] + knots[s + 1]);
    if (!(d(mid) < -dead_band(d, mid, tol))) {
      ++s;
      continue;
    }
    std::size_t e = s;
    while (e + 1 < segs) {
      const double next = 0.5 * (knots[e + 1] + knots[e + 2]);
      if (!(d(next) < -dead_band(d, next, tol))) break;
      ++e;
    }
    Run run;
    run.minor = minor;
    run.lo = knots[s];
    run.hi = knots[e + 1];
    if (s > 0) {
      run.has_left = true;
      run.left_knot = knots[s - 1];
      run.left_is_root = s - 1 > 0 || d(0.0) == 0.0;
    }
    run.right_is_last = e + 2 >= knots.size() - 1;
    if (e + 1 == segs) {
      // Negative up to zeta_max: beyond the Cauchy bound the sign is that of
      // the leading coefficient.
      if (d.leading() < 0.0) run.hi = kInf;
      run.right_is_last = true;
      run.right_knot = kInf;
    } else {
      run.right_knot = run.right_is_last ? kInf : knots[e + 2];
    }
    runs.push_back(run);
    s = e + 1;
  }
  return runs;
}

void confirm_run(const RealPoly& d, const Run& run, const SosOptions& sos,
                 std::vector<BandCheck>& transcript, bool& ok) {
  const double width = std::isinf(run.hi) ? std::max(run.lo, 1e-3) : run.hi - run.lo;
  const double inset = 0.05 * width;
  auto check = [&](Interval iv, bool expect) {
    BandCheck c;
    c.minor_index = run.minor;
    c.interval = iv;
    c.expect_feasible = expect;
    c.result = certify_nonnegative(d, iv, sos);
    ok = ok && c.consistent();
    transcript.push_back(std::move(c));
  };

  if (run.has_left) {
    const double flank = run.lo - run.left_knot;
    const double in = std::min(inset, 0.25 * flank);
    const double lo = run.left_is_root ? run.left_knot + in : run.left_knot;
    check(Interval::finite(lo, run.lo - in), true);
  }
  if (std::isinf(run.hi)) {
    check(Interval::semi_infinite(run.lo + inset), false);
    return;
  }
  check(Interval::finite(run.lo == 0.0 ? 0.0 : run.lo + inset, run.hi - inset), false);
  if (run.right_is_last) {
    check(Interval::semi_infinite(run.hi + inset), true);
  } else {
    const double in = std::min(inset, 0.25 * (run.right_knot - run.hi));
    check(Interval::finite(run.hi + in, run.right_knot - in), true);
  }
}

// |zeta| range covered by an interval (the minors and the spectral abscissa
// are even in zeta).
std::pair<double, double> abs_range(const Interval& iv, double cap) {
  const double lo = iv.lo, hi = iv.hi;
  if (lo <= 0.0 && hi >= 0.0) {
    return {0.0, std::min(std::max(-lo, hi), std::max(cap, 0.0))};
  }
  const double a = std::min(std::abs(lo), std::abs(hi));
  const double b = std::max(std::abs(lo), std::abs(hi));
  return {a, std::isinf(b) ? std::max(a + cap, a) : b};
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kStable: return "stable";
    case Verdict::kUnstable: return "unstable";
    case Verdict::kMarginal: return "marginal";
  }
  return "unknown";
}

FrequencyBand make_band(double lo, double hi, int minor_index) {
  FrequencyBand b;
  b.lo = lo;
  b.hi = hi;
  b.minor_index = minor_index;
  b.wavelength_lo = std::isinf(hi) ? 0.0 : kTwoPi / hi;
  b.wavelength_hi = lo > 0.0 ? kTwoPi / lo : kInf;
  return b;
}

BandAnalysis analyze_bands(const MinorSet& minors, const BandOptions& opts) {
  BandAnalysis out;
  for (const RealPoly& d : minors.deltas) out.zeta_max = std::max(out.zeta_max, cauchy_bound(d));
  if (out.zeta_max <= 0.0) out.zeta_max = 1.0;

  std::vector<Run> runs;
  std::vector<bool> confirmed;
  for (int i = 0; i < minors.n; ++i) {
    const RealPoly& d = minors[i];
    if (d.is_zero()) continue;
    for (const Run& r : negative_runs(d, i + 1, out.zeta_max, opts.sos.tol)) {
      bool ok = true;
      if (opts.confirm) confirm_run(d, r, opts.sos, out.transcript, ok);
      runs.push_back(r);
      confirmed.push_back(opts.confirm && ok);
    }
  }

  std::vector<std::size_t> order(runs.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return runs[x].lo < runs[y].lo || (runs[x].lo == runs[y].lo && runs[x].minor < runs[y].minor);
  });
  for (std::size_t k : order) {
    const Run& r = runs[k];
    if (!out.bands.empty() && r.lo <= out.bands.back().hi + opts.resolution) {
      FrequencyBand& last = out.bands.back();
      const bool ok = last.confirmed && confirmed[k];
      last = make_band(last.lo, std::max(last.hi, r.hi), last.minor_index);
      last.confirmed = ok;
      continue;
    }
    FrequencyBand b = make_band(r.lo, r.hi, r.minor);
    b.confirmed = confirmed[k];
    out.bands.push_back(b);
  }
  return out;
}

std::vector<FrequencyBand> destabilizing_bands(const SystemSpec& spec, double resolution) {
  BandOptions opts;
  opts.resolution = resolution;
  return analyze_bands(hurwitz_minors(spec), opts).bands;
}

std::vector<int> quantized_modes(const FrequencyBand& band, double L) {
  if (!(L > 0.0) || !std::isfinite(L)) throw InputError("domain length must be positive");
  std::vector<int> modes;
  if (!(band.hi > band.lo)) return modes;
  const double slack = 1e-9;
  const double kmin = std::max(1.0, std::ceil(band.lo * L / kTwoPi * (1.0 - slack)));
  if (std::isinf(band.hi)) throw InputError("cannot enumerate modes of an unbounded band");
  for (int k = static_cast<int>(kmin);; ++k) {
    const double z = kTwoPi * k / L;
    if (z > band.hi * (1.0 + slack)) break;
    if (z >= band.lo * (1.0 - slack)) modes.push_back(k);
  }
  return modes;
}

StabilityReport stability_verdict(const SystemSpec& spec, const AnalysisOptions& opts) {
  spec.validate();
  StabilityReport rep;
  rep.spec = spec;
  rep.tol = opts.sos.tol;
  rep.domain = opts.zeta_interval.value_or(Interval::global());
  rep.minors = hurwitz_minors(spec);
  rep.calibration_scalar = rep.minors.calibration;
  const Tolerances& tol = opts.sos.tol;

  rep.homogeneous_mode_stable = true;
  bool any_infeasible = false, any_marginal = false;
  for (int i = 0; i < rep.minors.n; ++i) {
    MinorReport mr;
    mr.index = i + 1;
    mr.delta = rep.minors[i];
    mr.value_at_zero = mr.delta(0.0);
    if (!(mr.value_at_zero > 0.0)) rep.homogeneous_mode_stable = false;
    mr.sdp = certify_nonnegative(mr.delta, rep.domain, opts.sos);
    mr.sturm = sturm_nonneg_oracle(mr.delta, rep.domain);
    const Minimizer low = minimizer(mr.delta, rep.domain);
    mr.minimum = low.value;
    mr.in_dead_band = std::isfinite(low.value) && std::abs(low.value) <= dead_band(mr.delta, low.zeta, tol);

    std::ostringstream why;
    if (!mr.in_dead_band) {
      const bool positive = mr.minimum > 0.0;
      if (positive && mr.sdp.status == Feasibility::kInfeasible) {
        why << "minor " << mr.index << ": SDP infeasible but minimum " << mr.minimum << " > 0";
      } else if (!positive && mr.sdp.status == Feasibility::kFeasible) {
        why << "minor " << mr.index << ": certificate found but minimum " << mr.minimum << " < 0";
      } else if (!positive && !mr.sturm.witness) {
        why << "minor " << mr.index << ": Sturm oracle found no witness for minimum " << mr.minimum;
      }
    }
    if (!why.str().empty()) {
      rep.oracle.sturm_agrees = false;
      throw PipelineDisagreement(why.str());
    }

    if (mr.in_dead_band || mr.sdp.status == Feasibility::kMarginal) {
      any_marginal = true;
    } else if (mr.sdp.status == Feasibility::kInfeasible) {
      any_infeasible = true;
      if (!rep.witness) {
        Witness w;
        w.minor_index = mr.index;
        w.zeta = *mr.sturm.witness;
        if (rep.domain.kind == Interval::Kind::kGlobal) w.zeta = std::abs(w.zeta);
        w.value = mr.delta(w.zeta);
        rep.witness = w;
      }
    }
    rep.per_minor.push_back(std::move(mr));
  }
  rep.verdict = any_infeasible ? Verdict::kUnstable
                               : (any_marginal ? Verdict::kMarginal : Verdict::kStable);

  // Independent spectral check on a dense grid.
  const auto [glo, ghi] = abs_range(rep.domain, default_zeta_max(rep.minors));
  std::vector<double> grid;
  const int pts = std::max(opts.oracle_points, 2);
  for (int k = 0; k < pts; ++k) grid.push_back(glo + (ghi - glo) * k / (pts - 1));
  rep.oracle.grid_points = pts;
  rep.oracle.grid_lo = glo;
  rep.oracle.grid_hi = ghi;
  rep.oracle.max_abscissa = -kInf;
  for (const SpectralSample& s : eigen_sample_oracle(spec, grid)) {
    if (s.abscissa > rep.oracle.max_abscissa) {
      rep.oracle.max_abscissa = s.abscissa;
      rep.oracle.zeta_at_max = s.zeta;
    }
  }
  if (rep.verdict == Verdict::kStable && rep.oracle.max_abscissa > tol.dead_band) {
    rep.oracle.eigen_agrees = false;
    std::ostringstream os;
    os << "minors certify stability but the spectral abscissa reaches "
       << rep.oracle.max_abscissa << " at zeta = " << rep.oracle.zeta_at_max;
    throw PipelineDisagreement(os.str());
  }
  if (rep.witness) {
    const SpectralSample s = eigen_sample_oracle(spec, {rep.witness->zeta}).front();
    rep.witness->eig_real = s.abscissa;
    rep.witness->eig_imag = s.imag_at_max;
    if (s.abscissa < -tol.marginal) {
      rep.oracle.eigen_agrees = false;
      std::ostringstream os;
      os << "minor " << rep.witness->minor_index << " is negative at zeta = " << rep.witness->zeta
         << " but the spectral abscissa there is " << s.abscissa;
      throw PipelineDisagreement(os.str());
    }
  }

  if (opts.compute_bands && rep.verdict != Verdict::kStable) {
    BandOptions bo;
    bo.resolution = opts.band_resolution;
    bo.confirm = opts.confirm_bands;
    bo.sos = opts.sos;
    BandAnalysis ba = analyze_bands(rep.minors, bo);
    if (rep.domain.kind != Interval::Kind::kGlobal) {
      const auto [lo, hi] = abs_range(rep.domain, kInf);
      std::vector<FrequencyBand> clipped;
      for (const FrequencyBand& b : ba.bands) {
        const double l = std::max(b.lo, lo), h = std::min(b.hi, hi);
        if (l < h) {
          FrequencyBand c = make_band(l, h, b.minor_index);
          c.confirmed = b.confirmed;
          clipped.push_back(c);
        }
      }
      ba.bands = std::move(clipped);
    }
    rep.bands = std::move(ba.bands);
    rep.band_transcript = std::move(ba.transcript);
  }
  return rep;
}

}  // namespace rdacert
