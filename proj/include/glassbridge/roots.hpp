#pragma once

#include <cmath>
#include <stdexcept>

namespace glassbridge {

struct RootResult {
  double root;
  int evaluations;
};

// Bisection on [lo, hi]; requires f(lo) and f(hi) of opposite sign (or one of
// them zero). Stops when the bracket is narrower than tol.
template <class F>
RootResult bisect(F&& f, double lo, double hi, double tol) {
  double flo = f(lo);
  double fhi = f(hi);
  int evals = 2;
  if (flo == 0.0) return {lo, evals};
  if (fhi == 0.0) return {hi, evals};
  if (std::signbit(flo) == std::signbit(fhi))
    throw std::domain_error("bisect: no sign change on bracket");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    ++evals;
    if (fm == 0.0) return {mid, evals};
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), evals};
}

}  // namespace glassbridge
