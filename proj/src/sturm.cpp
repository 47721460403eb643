#include "rdacert/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rdacert/errors.hpp"

namespace rdacert {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RealPoly normalized(const RealPoly& p) {
  const double m = p.max_abs_coeff();
  return m > 0.0 ? (1.0 / m) * p : p;
}

int sign(double x) { return (x > 0.0) - (x < 0.0); }

int sign_at(const RealPoly& p, double x) {
  if (std::isinf(x)) {
    const int lead = sign(p.leading());
    return (x < 0.0 && p.degree() % 2 == 1) ? -lead : lead;
  }
  return sign(p(x));
}

double bisect_sign_change(const RealPoly& p, double a, double b) {
  double fa = p(a);
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = p(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

void isolate(const RealPoly& p, const std::vector<RealPoly>& chain, double a,
             double b, int count, int depth, std::vector<double>& out) {
  if (count <= 0) return;
  const double width_floor = 1e-13 * (1.0 + std::abs(a) + std::abs(b));
  if (count == 1) {
    const double fa = p(a), fb = p(b);
    if (fb == 0.0) {
      out.push_back(b);
    } else if (sign(fa) * sign(fb) < 0) {
      out.push_back(bisect_sign_change(p, a, b));
    } else {
      // Even multiplicity: follow the Sturm count.
      while (b - a > width_floor) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        if (count_roots(chain, a, m) >= 1) b = m;
        else a = m;
      }
      out.push_back(0.5 * (a + b));
    }
    return;
  }
  const double m = 0.5 * (a + b);
  if (b - a <= width_floor || depth > 200 || m <= a || m >= b) {
    out.push_back(m);  // unresolvable cluster
    return;
  }
  const int left = count_roots(chain, a, m);
  isolate(p, chain, a, m, left, depth + 1, out);
  isolate(p, chain, m, b, count - left, depth + 1, out);
}

bool chain_ok(const std::vector<RealPoly>& chain) {
  for (const RealPoly& q : chain) {
    for (double c : q.coeffs()) {
      if (!std::isfinite(c)) return false;
    }
  }
  return true;
}

// Golden-section minimization of p on [a, b], seeded by the best probe.
double refine_minimum(const RealPoly& p, double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  for (int it = 0; it < 120 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
    if (p(c) < p(d)) b = d;
    else a = c;
    c = b - g * (b - a);
    d = a + g * (b - a);
  }
  return 0.5 * (a + b);
}

}  // namespace

std::string kind_name(Interval::Kind kind) {
  switch (kind) {
    case Interval::Kind::kGlobal: return "global";
    case Interval::Kind::kFinite: return "finite_interval";
    case Interval::Kind::kSemiInfinite: return "semi_infinite";
  }
  return "unknown";
}

std::string to_string(const Interval& interval) {
  std::ostringstream os;
  switch (interval.kind) {
    case Interval::Kind::kGlobal: os << "(-inf, inf)"; break;
    case Interval::Kind::kFinite: os << "[" << interval.lo << ", " << interval.hi << "]"; break;
    case Interval::Kind::kSemiInfinite: os << "[" << interval.lo << ", inf)"; break;
  }
  return os.str();
}

std::vector<RealPoly> sturm_sequence(const RealPoly& p, double zero_tol) {
  std::vector<RealPoly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(normalized(p));
  if (p.degree() == 0) return chain;
  chain.push_back(normalized(p.derivative()));
  while (chain.back().degree() > 0) {
    const RealPoly& a = chain[chain.size() - 2];
    const RealPoly& b = chain.back();
    RealPoly r = -a.divmod(b).second;
    r = r.truncated_below(zero_tol * std::max(a.max_abs_coeff(), 1.0));
    if (r.is_zero()) break;
    chain.push_back(normalized(r));
  }
  return chain;
}

int sign_variations(const std::vector<RealPoly>& chain, double x) {
  int prev = 0, changes = 0;
  for (const RealPoly& q : chain) {
    const int s = sign_at(q, x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

int count_roots(const std::vector<RealPoly>& chain, double a, double b) {
  return sign_variations(chain, a) - sign_variations(chain, b);
}

std::vector<double> real_roots(const RealPoly& p, double lo, double hi) {
  std::vector<double> roots;
  if (p.degree() <= 0 || !(lo <= hi)) return roots;
  const auto chain = sturm_sequence(p);
  if (p(lo) == 0.0) roots.push_back(lo);
  const int count = count_roots(chain, lo, hi);
  isolate(p, chain, lo, hi, count, 0, roots);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

NonnegResult sturm_nonneg_oracle(const RealPoly& p, const Interval& interval) {
  if (p.is_zero()) throw InputError("nonnegativity oracle: zero polynomial");
  if (interval.kind == Interval::Kind::kFinite && !(interval.lo < interval.hi)) {
    throw BadInterval("nonnegativity oracle: lo must be < hi");
  }
  NonnegResult res;
  const double R = cauchy_bound(p) + 1.0;
  const double a = std::isinf(interval.lo) ? -R : interval.lo;
  const double b = std::isinf(interval.hi) ? std::max(R, a + 1.0) : interval.hi;

  const auto chain = sturm_sequence(p);
  std::vector<double> probes;
  if (chain_ok(chain) && count_roots(chain, a, b) >= 0) {
    res.roots = real_roots(p, a, b);
    std::vector<double> knots{a};
    knots.insert(knots.end(), res.roots.begin(), res.roots.end());
    knots.push_back(b);
    probes.push_back(a);
    probes.push_back(b);
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
      probes.push_back(0.5 * (knots[k] + knots[k + 1]));
    }
  } else {
    res.degenerate = true;
    res.warning = "degenerate Sturm sequence; fell back to dense sampling";
    const int n = 20001;
    for (int k = 0; k < n; ++k) probes.push_back(a + (b - a) * k / (n - 1));
  }

  double best_x = probes.front();
  double best_v = kInf;
  for (double x : probes) {
    const double v = p(x);
    if (v < best_v) {
      best_v = v;
      best_x = x;
    }
  }
  res.min_probe = best_v;
  if (best_v >= 0.0) return res;

  res.nonnegative = false;
  // Deepen the witness inside the bracket between neighbouring roots.
  double lo = a, hi = b;
  for (double r : res.roots) {
    if (r < best_x) lo = r;
    if (r > best_x) {
      hi = r;
      break;
    }
  }
  const double refined = refine_minimum(p, lo, hi);
  const double x = p(refined) < best_v ? refined : best_x;
  res.witness = x;
  res.witness_value = p(x);
  res.min_probe = res.witness_value;
  return res;
}

Minimizer minimizer(const RealPoly& p, const Interval& interval) {
  if (p.degree() <= 0) return {std::max(interval.lo, std::min(0.0, interval.hi)), p[0]};
  const bool up_unbounded = std::isinf(interval.hi);
  const bool down_unbounded = std::isinf(interval.lo);
  if (up_unbounded && p.leading() < 0.0) return {kInf, -kInf};
  if (down_unbounded && sign_at(p, -kInf) < 0) return {-kInf, -kInf};
  const double R = cauchy_bound(p.derivative()) + 1.0;
  const double a = down_unbounded ? -R : interval.lo;
  const double b = up_unbounded ? std::max(R, a + 1.0) : interval.hi;
  Minimizer m{a, p(a)};
  auto visit = [&](double z) {
    const double v = p(z);
    if (v < m.value) m = {z, v};
  };
  visit(b);
  for (double c : real_roots(p.derivative(), a, b)) visit(c);
  return m;
}

double minimum_value(const RealPoly& p, const Interval& interval) { return minimizer(p, interval).value; }

}  // namespace rdacert
