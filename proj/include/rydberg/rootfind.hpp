#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "errors.hpp"

namespace rydberg {

/// Locates a root of f inside [a, b] given f(a) and f(b) of opposite sign.
/// Illinois-modified regula falsi with a bisection safeguard; stops when the
/// bracket is below a few ulps of its midpoint.
template <class F>
double refine_root(F&& f, double a, double b, double fa, double fb) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa < 0) == (fb < 0)) throw domain_error("refine_root: bracket has no sign change");
  int side = 0;
  for (int iter = 0; iter < 200; ++iter) {
    const double width = std::abs(b - a);
    if (width <= 4 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b)) ||
        width < std::numeric_limits<double>::min())
      break;
    double c = (a * fb - b * fa) / (fb - fa);
    // fall back to bisection when the secant lands on or outside the bracket
    if (!(c > std::min(a, b) && c < std::max(a, b)) || iter % 8 == 7) c = 0.5 * (a + b);
    const double fc = f(c);
    if (fc == 0.0) return c;
    if ((fc < 0) == (fb < 0)) {
      b = c;
      fb = fc;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = c;
      fa = fc;
      if (side == +1) fb *= 0.5;
      side = +1;
    }
  }
  return 0.5 * (a + b);
}

template <class F>
double refine_root(F&& f, double a, double b) {
  return refine_root(f, a, b, f(a), f(b));
}

/// Scans f on an increasing grid and returns every root bracketed by a sign
/// change between consecutive grid points. Roots closer together than the
/// grid spacing are missed, so callers check the count they expect.
template <class F>
std::vector<double> sign_change_roots(F&& f, std::span<const double> grid) {
  std::vector<double> roots;
  if (grid.size() < 2) return roots;
  double x0 = grid[0];
  double f0 = f(x0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double x1 = grid[i];
    const double f1 = f(x1);
    if (f0 == 0.0) {
      if (i == 1) roots.push_back(x0);
    } else if (f1 != 0.0 && (f0 < 0) != (f1 < 0)) {
      roots.push_back(refine_root(f, x0, x1, f0, f1));
    } else if (f1 == 0.0) {
      roots.push_back(x1);
    }
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

}  // namespace rydberg
