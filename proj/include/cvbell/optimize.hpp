#pragma once

// Scalar search routines used by the Bell maximization and the
// transmittivity threshold.

#include <cmath>
#include <concepts>
#include <stdexcept>

namespace cvbell::optimize {

template <std::floating_point Real>
struct Extremum {
  Real argument;
  Real value;
};

// Golden-section search for the maximum of a unimodal objective on
// [lower, upper], driven by a comparator: less(x1, x2) is true when the
// objective at x1 is below the objective at x2. Stops once the bracket is
// narrower than `tolerance` and returns its midpoint.
template <std::floating_point Real, typename Less>
  requires std::predicate<Less&, Real, Real>
Real golden_section_argmax(Less&& less, Real lower, Real upper, Real tolerance,
                           int max_iterations = 500) {
  if (!(lower <= upper)) throw std::invalid_argument("golden section: empty bracket");
  const Real ratio = (std::sqrt(Real(5)) - Real(1)) / Real(2);
  Real x1 = upper - ratio * (upper - lower);
  Real x2 = lower + ratio * (upper - lower);
  for (int it = 0; it < max_iterations && upper - lower > tolerance; ++it) {
    if (less(x1, x2)) {
      lower = x1;
      x1 = x2;
      x2 = lower + ratio * (upper - lower);
    } else {
      upper = x2;
      x2 = x1;
      x1 = upper - ratio * (upper - lower);
    }
  }
  return (lower + upper) / Real(2);
}

// Value-based variant; each iteration costs one objective evaluation.
template <std::floating_point Real, typename F>
  requires std::regular_invocable<F&, Real>
Extremum<Real> golden_section_maximize(F&& f, Real lower, Real upper, Real tolerance,
                                       int max_iterations = 500) {
  if (!(lower <= upper)) throw std::invalid_argument("golden section: empty bracket");
  const Real ratio = (std::sqrt(Real(5)) - Real(1)) / Real(2);
  Real x1 = upper - ratio * (upper - lower);
  Real x2 = lower + ratio * (upper - lower);
  Real f1 = f(x1);
  Real f2 = f(x2);
  for (int it = 0; it < max_iterations && upper - lower > tolerance; ++it) {
    if (f1 < f2) {
      lower = x1;
      x1 = x2;
      f1 = f2;
      x2 = lower + ratio * (upper - lower);
      f2 = f(x2);
    } else {
      upper = x2;
      x2 = x1;
      f2 = f1;
      x1 = upper - ratio * (upper - lower);
      f1 = f(x1);
    }
  }
  const Real mid = (lower + upper) / Real(2);
  return {mid, f(mid)};
}

// Bisection for a sign change of f on [lower, upper]. Requires
// f(lower) and f(upper) of opposite sign (or one of them zero).
template <std::floating_point Real, typename F>
  requires std::regular_invocable<F&, Real>
Real bisect(F&& f, Real lower, Real upper, Real tolerance, int max_iterations = 200) {
  Real f_lower = f(lower);
  const Real f_upper = f(upper);
  if (f_lower == Real(0)) return lower;
  if (f_upper == Real(0)) return upper;
  if ((f_lower < Real(0)) == (f_upper < Real(0))) {
    throw std::invalid_argument("bisect: endpoints do not bracket a root");
  }
  for (int it = 0; it < max_iterations && upper - lower > tolerance; ++it) {
    const Real mid = lower + (upper - lower) / Real(2);
    const Real f_mid = f(mid);
    if (f_mid == Real(0)) return mid;
    if ((f_mid < Real(0)) == (f_lower < Real(0))) {
      lower = mid;
      f_lower = f_mid;
    } else {
      upper = mid;
    }
  }
  return lower + (upper - lower) / Real(2);
}

}  // namespace cvbell::optimize
