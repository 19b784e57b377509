#pragma once

#include <cmath>
#include <utility>

namespace steerlab {

// Golden-section maximization of a unimodal-enough objective on [a, b].
// Shrinks the bracket until b - a < tol and returns (argmax, value).
template <class F>
std::pair<double, double> golden_section_maximize(F&& f, double a, double b, double tol = 1e-8) {
  static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace steerlab
