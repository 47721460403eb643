#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rdacert/interval.hpp"
#include "rdacert/poly.hpp"

namespace rdacert {

/// Sturm chain p, p', -rem(p, p'), ... with each member rescaled to unit
/// max-coefficient (positive scaling keeps signs). Remainders below
/// `zero_tol` relative are treated as zero, which ends the chain at the
/// numerical gcd.
std::vector<RealPoly> sturm_sequence(const RealPoly& p, double zero_tol = 1e-11);

/// Sign variations of the chain at x; +/-inf use leading-term signs.
int sign_variations(const std::vector<RealPoly>& chain, double x);

/// Number of distinct real roots in (a, b].
int count_roots(const std::vector<RealPoly>& chain, double a, double b);

/// Distinct real roots of p in [lo, hi] (finite bounds), ascending. Roots
/// with a sign change are refined by bisection on p to full precision;
/// even-multiplicity roots by Sturm-count bisection.
std::vector<double> real_roots(const RealPoly& p, double lo, double hi);

struct NonnegResult {
  bool nonnegative = true;
  std::optional<double> witness;  // zeta* with p(zeta*) < 0
  double witness_value = 0.0;
  /// Smallest probe value encountered (the witness value when negative).
  double min_probe = 0.0;
  std::vector<double> roots;  // distinct real roots inside the interval
  bool degenerate = false;    // fell back to dense sampling
  std::string warning;
};

/// Decides p >= 0 on the interval by root isolation plus sign probing
/// between consecutive roots. Throws InputError for the zero polynomial.
NonnegResult sturm_nonneg_oracle(const RealPoly& p, const Interval& interval);

struct Minimizer {
  double zeta = 0.0;
  double value = 0.0;
};

/// Location and value of the minimum of p over the interval; value -inf
/// (zeta +-inf) when p is unbounded below there.
Minimizer minimizer(const RealPoly& p, const Interval& interval);

/// Global minimum of p over the interval (from critical points and
/// endpoints); -inf when p is unbounded below there.
double minimum_value(const RealPoly& p, const Interval& interval);

}  // namespace rdacert
