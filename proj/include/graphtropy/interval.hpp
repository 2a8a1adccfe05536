#pragma once

#include <string>

#include "graphtropy/error.hpp"

namespace gtropy {

/// Interval probability [lo, hi] ⊆ [0, 1].
struct IntervalWeight {
  double lo = 0.0;
  double hi = 0.0;

  IntervalWeight() = default;
  IntervalWeight(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(0.0 <= lo && lo <= hi && hi <= 1.0))
      throw Error(Errc::invalid_pair,
                  "interval [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "] violates 0 <= lo <= hi <= 1");
  }

  static IntervalWeight point(double v) { return {v, v}; }

  double midpoint() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }

  friend bool operator==(const IntervalWeight&, const IntervalWeight&) = default;
};

/// Strict refinement: e1 is more specific than e2 iff e1's interval is
/// strictly contained in e2's (both endpoints strictly inside).
inline bool strictly_refines(const IntervalWeight& e1,
                             const IntervalWeight& e2) {
  return e1.lo > e2.lo && e1.hi < e2.hi;
}

}  // namespace gtropy
