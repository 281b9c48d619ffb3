#pragma once

#include <cmath>
#include <string>

#include "beamk/errors.hpp"

namespace beamk::detail {

struct RootResult {
  double x;
  double residual;
  int iterations;
};

/// Root of an increasing function on a bracket [lo, hi] with
/// value(lo) <= 0 <= value(hi). Newton steps are taken while they stay inside
/// the bracket and at least halve |value|; otherwise the step is a bisection.
/// Stops when |value| <= tol or the bracket is down to adjacent doubles.
template <typename Value, typename Slope>
RootResult increasing_root(Value&& value, Slope&& slope, double lo, double hi, double x0,
                           double tol, int max_iterations = 400) {
  double x = (x0 > lo && x0 < hi) ? x0 : 0.5 * (lo + hi);
  double fx = value(x);
  for (int it = 1; it <= max_iterations; ++it) {
    if (std::abs(fx) <= tol) return {x, fx, it};
    if (fx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) {
      // Bracket exhausted: return whichever end sits closer to the root.
      const double flo = value(lo);
      const double fhi = value(hi);
      return std::abs(flo) <= std::abs(fhi) ? RootResult{lo, flo, it} : RootResult{hi, fhi, it};
    }
    const double d = slope(x);
    double next = (d > 0.0) ? x - fx / d : mid;
    if (!(next > lo && next < hi)) next = mid;
    double fnext = value(next);
    if (next != mid && std::abs(fnext) > 0.5 * std::abs(fx)) {
      next = mid;
      fnext = value(mid);
    }
    x = next;
    fx = fnext;
  }
  throw ConvergenceError("increasing_root: no convergence after " +
                         std::to_string(max_iterations) + " iterations (bracket [" +
                         std::to_string(lo) + ", " + std::to_string(hi) + "])");
}

}  // namespace beamk::detail
