#pragma once

#include <cmath>
#include <functional>

#include "qndbec/errors.hpp"

namespace qndbec {

struct MinimizeResult {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// Golden-section search for a minimum of `f` on [a, b], stopping when the
/// bracket width falls below rel_tol * |x|. Throws NoMinimumInBracket when `f`
/// is still decreasing at either end (the minimum lies outside [a, b]).
inline MinimizeResult golden_section_minimize(const std::function<double(double)>& f,
                                              double a, double b,
                                              double rel_tol = 1e-6,
                                              int max_iter = 500) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  const double a0 = a;
  const double b0 = b;

  int it = 0;
  for (; it < max_iter; ++it) {
    if (std::abs(b - a) <= rel_tol * std::abs(0.5 * (a + b))) break;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double fx = f(x);

  // A minimum pinned to an endpoint means the bracket missed it.
  const double span = b0 - a0;
  if (x - a0 < 1e-3 * span && f(a0) <= fx) {
    throw NoMinimumInBracket("objective still decreasing at the lower bracket end");
  }
  if (b0 - x < 1e-3 * span && f(b0) <= fx) {
    throw NoMinimumInBracket("objective still decreasing at the upper bracket end");
  }
  return {x, fx, it};
}

}  // namespace qndbec
