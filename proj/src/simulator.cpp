#include "rdacert/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <fftw3.h>
#include <json.hpp>

#include "rdacert/errors.hpp"
#include "rdacert/hurwitz.hpp"
#include "rdacert/version.hpp"

namespace rdacert {
namespace {

constexpr double kBlowup = 1e6;
constexpr double kUndershoot = -1e-9;
constexpr int kContourPoints = 32;

// Planning is not thread-safe in FFTW; execution is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

// Real <-> half-complex transforms of one grid size, normalized so that
// forward() returns (1/N) sum f_j exp(-2 pi i m j / N).
class Fft {
 public:
  explicit Fft(int n) : n_(n) {
    in_ = fftw_alloc_real(n);
    out_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard<std::mutex> lock(plan_mutex());
    r2c_ = fftw_plan_dft_r2c_1d(n, in_, out_, FFTW_ESTIMATE);
    c2r_ = fftw_plan_dft_c2r_1d(n, out_, in_, FFTW_ESTIMATE);
  }
  ~Fft() {
    {
      std::lock_guard<std::mutex> lock(plan_mutex());
      fftw_destroy_plan(r2c_);
      fftw_destroy_plan(c2r_);
    }
    fftw_free(in_);
    fftw_free(out_);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  int size() const { return n_; }
  int modes() const { return n_ / 2 + 1; }

  void forward(const double* f, Complex* hat) {
    std::copy(f, f + n_, in_);
    fftw_execute(r2c_);
    const double s = 1.0 / n_;
    for (int m = 0; m < modes(); ++m) hat[m] = Complex(out_[m][0], out_[m][1]) * s;
  }
  void inverse(const Complex* hat, double* f) {
    for (int m = 0; m < modes(); ++m) {
      out_[m][0] = hat[m].real();
      out_[m][1] = hat[m].imag();
    }
    fftw_execute(c2r_);  // overwrites out_
    std::copy(in_, in_ + n_, f);
  }

 private:
  int n_;
  double* in_;
  fftw_complex* out_;
  fftw_plan r2c_;
  fftw_plan c2r_;
};

using CVec = std::vector<Complex>;

double wavenumber(int m, double L) { return 2.0 * std::numbers::pi * m / L; }

// Exponential RK4 coefficients for a diagonal linear operator.
struct Etd {
  CVec E, E2, Q, f1, f2, f3;

  Etd(const CVec& lin, double h) {
    const std::size_t n = lin.size();
    E.resize(n);
    E2.resize(n);
    Q.assign(n, 0.0);
    f1.assign(n, 0.0);
    f2.assign(n, 0.0);
    f3.assign(n, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
      const Complex hl = h * lin[m];
      E[m] = std::exp(hl);
      E2[m] = std::exp(0.5 * hl);
      for (int j = 0; j < kContourPoints; ++j) {
        const Complex r = std::exp(Complex(0.0, std::numbers::pi * (j + 0.5) * 2.0 / kContourPoints));
        const Complex z = hl + r;
        const Complex ez = std::exp(z);
        const Complex z3 = z * z * z;
        Q[m] += (std::exp(0.5 * z) - 1.0) / z;
        f1[m] += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
        f2[m] += (2.0 + z + ez * (-2.0 + z)) / z3;
        f3[m] += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
      }
      Q[m] *= h / kContourPoints;
      f1[m] *= h / kContourPoints;
      f2[m] *= h / kContourPoints;
      f3[m] *= h / kContourPoints;
    }
  }
};

class Integrator {
 public:
  Integrator(const SimConfig& cfg, double dt)
      : p_(cfg.params), n_(cfg.N), fft_(cfg.N), c1_(n_), c2_(n_), r1_(n_), r2_(n_) {
    const int modes = fft_.modes();
    CVec l1(modes), l2(modes);
    cutoff_ = n_ / 3;
    for (int m = 0; m < modes; ++m) {
      const double k = wavenumber(m, cfg.L);
      // The Nyquist mode carries no odd derivative on a real grid.
      const double kodd = m == n_ / 2 ? 0.0 : k;
      l1[m] = Complex(-p_.d * k * k, p_.v1 * kodd);
      l2[m] = Complex(-k * k, p_.v2 * kodd);
    }
    etd1_ = std::make_unique<Etd>(l1, dt);
    etd2_ = std::make_unique<Etd>(l2, dt);
  }

  void to_spectral(const std::vector<double>& c1, const std::vector<double>& c2, CVec& h1, CVec& h2) {
    h1.resize(fft_.modes());
    h2.resize(fft_.modes());
    fft_.forward(c1.data(), h1.data());
    fft_.forward(c2.data(), h2.data());
  }
  void to_physical(const CVec& h1, const CVec& h2, std::vector<double>& c1, std::vector<double>& c2) {
    c1.resize(n_);
    c2.resize(n_);
    fft_.inverse(h1.data(), c1.data());
    fft_.inverse(h2.data(), c2.data());
  }

  // Dealiased reaction terms in spectral space.
  void reaction(const CVec& h1, const CVec& h2, CVec& n1, CVec& n2, double t) {
    fft_.inverse(h1.data(), c1_.data());
    fft_.inverse(h2.data(), c2_.data());
    const double ab = p_.a + p_.b;
    for (int j = 0; j < n_; ++j) {
      const double u = c1_[j], v = c2_[j];
      if (!std::isfinite(u) || !std::isfinite(v) || std::abs(u) > kBlowup || std::abs(v) > kBlowup) {
        std::ostringstream os;
        os << "solution blew up near t = " << t;
        throw Blowup(os.str(), t);
      }
      const double uvv = u * v * v;
      r1_[j] = -uvv + p_.a * (1.0 - u);
      r2_[j] = uvv - ab * v;
    }
    n1.resize(fft_.modes());
    n2.resize(fft_.modes());
    fft_.forward(r1_.data(), n1.data());
    fft_.forward(r2_.data(), n2.data());
    for (int m = cutoff_ + 1; m < fft_.modes(); ++m) n1[m] = n2[m] = 0.0;
  }

  void step(CVec& v1, CVec& v2, double t, double dt) {
    const int M = fft_.modes();
    reaction(v1, v2, nv1_, nv2_, t);
    stage(*etd1_, v1, nv1_, a1_);
    stage(*etd2_, v2, nv2_, a2_);
    reaction(a1_, a2_, na1_, na2_, t + 0.5 * dt);
    stage(*etd1_, v1, na1_, b1_);
    stage(*etd2_, v2, na2_, b2_);
    reaction(b1_, b2_, nb1_, nb2_, t + 0.5 * dt);
    c1h_.resize(M);
    c2h_.resize(M);
    for (int m = 0; m < M; ++m) {
      c1h_[m] = etd1_->E2[m] * a1_[m] + etd1_->Q[m] * (2.0 * nb1_[m] - nv1_[m]);
      c2h_[m] = etd2_->E2[m] * a2_[m] + etd2_->Q[m] * (2.0 * nb2_[m] - nv2_[m]);
    }
    reaction(c1h_, c2h_, nc1_, nc2_, t + dt);
    combine(*etd1_, v1, nv1_, na1_, nb1_, nc1_);
    combine(*etd2_, v2, nv2_, na2_, nb2_, nc2_);
  }

 private:
  static void stage(const Etd& e, const CVec& v, const CVec& nl, CVec& out) {
    out.resize(v.size());
    for (std::size_t m = 0; m < v.size(); ++m) out[m] = e.E2[m] * v[m] + e.Q[m] * nl[m];
  }
  static void combine(const Etd& e, CVec& v, const CVec& nv, const CVec& na, const CVec& nb,
                      const CVec& nc) {
    for (std::size_t m = 0; m < v.size(); ++m) {
      v[m] = e.E[m] * v[m] + e.f1[m] * nv[m] + 2.0 * e.f2[m] * (na[m] + nb[m]) + e.f3[m] * nc[m];
    }
  }

  GrayScottParams p_;
  int n_;
  int cutoff_ = 0;
  Fft fft_;
  std::unique_ptr<Etd> etd1_, etd2_;
  std::vector<double> c1_, c2_, r1_, r2_;
  CVec nv1_, nv2_, a1_, a2_, na1_, na2_, b1_, b2_, nb1_, nb2_, c1h_, c2h_, nc1_, nc2_;
};

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

FrameDiagnostics diagnose(const Frame& f, const SimTrajectory& traj) {
  FrameDiagnostics d;
  d.time = f.time;
  const double n = static_cast<double>(f.c1.size());
  double mean1 = 0.0, mean2 = 0.0;
  for (std::size_t j = 0; j < f.c1.size(); ++j) {
    mean1 += f.c1[j];
    mean2 += f.c2[j];
  }
  mean1 /= n;
  mean2 /= n;
  const double ref1 = traj.has_equilibrium ? traj.equilibrium.c1 : mean1;
  const double ref2 = traj.has_equilibrium ? traj.equilibrium.c2 : mean2;
  d.min_concentration = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < f.c1.size(); ++j) {
    d.variance_c1 += (f.c1[j] - mean1) * (f.c1[j] - mean1);
    d.sup_deviation = std::max({d.sup_deviation, std::abs(f.c1[j] - ref1), std::abs(f.c2[j] - ref2)});
    d.min_concentration = std::min({d.min_concentration, f.c1[j], f.c2[j]});
  }
  d.variance_c1 /= n;
  return d;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

void SimConfig::validate() const {
  params.validate();
  if (N < 128 || !power_of_two(N)) throw InvalidSpec("N must be a power of two >= 128");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidSpec("dt must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InvalidSpec("t_end must be positive");
  if (snapshot_every < 1) throw InvalidSpec("snapshot_every must be >= 1");
  if (!(L > 0.0) || !std::isfinite(L)) throw InvalidSpec("L must be positive");
  if (ic.kind == InitialCondition::Kind::kEquilibriumMode && ic.mode < 1) {
    throw InvalidSpec("seed mode must be >= 1");
  }
}

std::pair<std::vector<double>, std::vector<double>> gray_scott_rhs(const std::vector<double>& c1,
                                                                   const std::vector<double>& c2,
                                                                   const GrayScottParams& p) {
  if (c1.size() != c2.size()) throw ShapeMismatch("species fields differ in length");
  std::vector<double> f1(c1.size()), f2(c1.size());
  for (std::size_t j = 0; j < c1.size(); ++j) {
    const Eigen::Vector2d r = gray_scott_reaction(p, c1[j], c2[j]);
    f1[j] = r(0);
    f2[j] = r(1);
  }
  return {f1, f2};
}

SimTrajectory integrate(const SimConfig& cfg) {
  cfg.validate();
  SimTrajectory traj;
  traj.config = cfg;
  traj.steps = std::max(1, static_cast<int>(std::llround(cfg.t_end / cfg.dt)));
  traj.dt = cfg.t_end / traj.steps;
  const int n = cfg.N;
  traj.x.resize(n);
  for (int j = 0; j < n; ++j) traj.x[j] = cfg.L * j / n;
  traj.has_equilibrium = cfg.params.discriminant() >= 0.0;
  if (traj.has_equilibrium) traj.equilibrium = gray_scott_equilibrium(cfg.params);

  Frame f0;
  f0.c1.resize(n);
  f0.c2.resize(n);
  const InitialCondition& ic = cfg.ic;
  if (ic.kind == InitialCondition::Kind::kMethod) {
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 1; k <= ic.method_modes; ++k) {
        const double arg = 2.0 * k * std::numbers::pi * traj.x[j] / cfg.L;
        s += std::cos(arg) + std::sin(arg);
      }
      f0.c1[j] = ic.base1 + ic.method_amplitude * s;
      f0.c2[j] = ic.base2 + ic.method_amplitude * s;
    }
  } else {
    if (!traj.has_equilibrium) throw NoRealEquilibrium("mode seeding needs a real equilibrium");
    const double zeta = wavenumber(ic.mode, cfg.L);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(mode_matrix(gray_scott_jacobian(cfg.params), zeta));
    Eigen::Index best = 0;
    es.eigenvalues().real().maxCoeff(&best);
    Eigen::VectorXcd v = es.eigenvectors().col(best);
    v /= v.cwiseAbs().maxCoeff();
    for (int j = 0; j < n; ++j) {
      const Complex e = std::exp(Complex(0.0, zeta * traj.x[j]));
      f0.c1[j] = traj.equilibrium.c1 + ic.amplitude * (v(0) * e).real();
      f0.c2[j] = traj.equilibrium.c2 + ic.amplitude * (v(1) * e).real();
    }
  }

  Integrator integ(cfg, traj.dt);
  CVec v1, v2;
  integ.to_spectral(f0.c1, f0.c2, v1, v2);
  auto record = [&](Frame fr) {
    FrameDiagnostics d = diagnose(fr, traj);
    if (d.min_concentration < kUndershoot) traj.undershoot = true;
    traj.diagnostics.push_back(d);
    traj.frames.push_back(std::move(fr));
  };
  record(std::move(f0));

  for (int s = 1; s <= traj.steps; ++s) {
    integ.step(v1, v2, (s - 1) * traj.dt, traj.dt);
    if (s % cfg.snapshot_every == 0 || s == traj.steps) {
      Frame fr;
      fr.time = s * traj.dt;
      integ.to_physical(v1, v2, fr.c1, fr.c2);
      for (int j = 0; j < n; ++j) {
        if (!std::isfinite(fr.c1[j]) || !std::isfinite(fr.c2[j]) || std::abs(fr.c1[j]) > kBlowup ||
            std::abs(fr.c2[j]) > kBlowup) {
          throw Blowup("solution blew up", fr.time);
        }
      }
      record(std::move(fr));
    }
  }
  return traj;
}

Complex fourier_mode(const std::vector<double>& f, int k) {
  Complex acc = 0.0;
  const double n = static_cast<double>(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    acc += f[j] * std::exp(Complex(0.0, -2.0 * std::numbers::pi * k * static_cast<double>(j) / n));
  }
  return acc / n;
}

ModeInfo dominant_mode(const std::vector<double>& frame, double L) {
  ModeInfo info;
  const int n = static_cast<int>(frame.size());
  if (n < 2) return info;
  Fft fft(n);
  CVec hat(fft.modes());
  fft.forward(frame.data(), hat.data());
  double total = 0.0, best = 0.0;
  for (int m = 1; m < fft.modes(); ++m) {
    const double pw = std::norm(hat[m]);
    total += pw;
    if (pw > best) {
      best = pw;
      info.k = m;
    }
  }
  // Rounding of a constant field leaves power far below this floor.
  const double floor = 1e-13 * (1.0 + std::abs(hat[0]));
  if (std::sqrt(total) <= floor) return ModeInfo{};
  info.zeta = wavenumber(info.k, L);
  info.power_fraction = best / total;
  return info;
}

std::vector<double> spectral_derivative(const std::vector<double>& f, double L, int order) {
  const int n = static_cast<int>(f.size());
  if (n < 2) throw InputError("spectral derivative needs at least two points");
  if (order < 0) throw InputError("derivative order must be nonnegative");
  Fft fft(n);
  CVec hat(fft.modes());
  fft.forward(f.data(), hat.data());
  for (int m = 0; m < fft.modes(); ++m) {
    const double k = wavenumber(m, L);
    if (m == n / 2 && n % 2 == 0 && order % 2 == 1) {
      hat[m] = 0.0;
      continue;
    }
    hat[m] *= std::pow(Complex(0.0, k), order);
  }
  std::vector<double> out(n);
  fft.inverse(hat.data(), out.data());
  return out;
}

void write_trajectory_csv(std::ostream& os, const SimTrajectory& t) {
  os << "# rdacert " << kVersion << "\n";
  os << "time,x,C1,C2\n";
  for (const Frame& f : t.frames) {
    const std::string ts = fmt(f.time);
    for (std::size_t j = 0; j < t.x.size(); ++j) {
      os << ts << ',' << fmt(t.x[j]) << ',' << fmt(f.c1[j]) << ',' << fmt(f.c2[j]) << '\n';
    }
  }
}

std::string trajectory_summary_json(const SimTrajectory& t) {
  using nlohmann::json;
  const SimConfig& c = t.config;
  json frames = json::array();
  for (std::size_t i = 0; i < t.frames.size(); ++i) {
    const FrameDiagnostics& d = t.diagnostics[i];
    const ModeInfo m = dominant_mode(t.frames[i].c1, c.L);
    frames.push_back({{"time", d.time},
                      {"variance_c1", d.variance_c1},
                      {"sup_deviation", d.sup_deviation},
                      {"min_concentration", d.min_concentration},
                      {"dominant_mode", {{"k", m.k}, {"zeta", m.zeta}, {"power_fraction", m.power_fraction}}}});
  }
  json ic = c.ic.kind == InitialCondition::Kind::kMethod
                ? json{{"kind", "method"},
                       {"base1", c.ic.base1},
                       {"base2", c.ic.base2},
                       {"amplitude", c.ic.method_amplitude},
                       {"modes", c.ic.method_modes}}
                : json{{"kind", "mode"}, {"k", c.ic.mode}, {"amplitude", c.ic.amplitude}};
  json doc{{"version", kVersion},
           {"params", {{"a", c.params.a}, {"b", c.params.b}, {"d", c.params.d}, {"v1", c.params.v1},
                       {"v2", c.params.v2}}},
           {"reproduction_parameters",
            {{"L", c.L},
             {"N", c.N},
             {"t_end", c.t_end},
             {"dt", t.dt},
             {"steps", t.steps},
             {"snapshot_every", c.snapshot_every},
             {"integrator", "ETDRK4, 32-point contour, 2/3 dealiasing"}}},
           {"initial_condition", ic},
           {"undershoot", t.undershoot},
           {"frames", frames}};
  if (t.has_equilibrium) doc["equilibrium"] = {{"c1", t.equilibrium.c1}, {"c2", t.equilibrium.c2}};
  return doc.dump(2);
}

void write_spacetime_csv(std::ostream& os, const SimTrajectory& t, int species) {
  if (species != 1 && species != 2) throw InputError("species must be 1 or 2");
  os << "# rdacert " << kVersion << "\n";
  os << "t\\x";
  for (double x : t.x) os << ',' << fmt(x);
  os << '\n';
  for (const Frame& f : t.frames) {
    os << fmt(f.time);
    for (double v : species == 1 ? f.c1 : f.c2) os << ',' << fmt(v);
    os << '\n';
  }
}

}  // namespace rdacert
