#pragma once

#include <limits>
#include <string>

namespace rdacert {

/// Frequency domain of a nonnegativity question: all of R, [lo, hi], or
/// [lo, inf).
struct Interval {
  enum class Kind { kGlobal, kFinite, kSemiInfinite };

  Kind kind = Kind::kGlobal;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  static Interval global() { return {}; }
  static Interval finite(double lo, double hi) { return {Kind::kFinite, lo, hi}; }
  static Interval semi_infinite(double lo) {
    return {Kind::kSemiInfinite, lo, std::numeric_limits<double>::infinity()};
  }

  bool contains(double x) const { return x >= lo && x <= hi; }
};

std::string kind_name(Interval::Kind kind);
std::string to_string(const Interval& interval);

}  // namespace rdacert
