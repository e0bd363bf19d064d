#pragma once

#include <functional>
#include <limits>
#include <utility>

namespace sweep::optimizer {

/// c2 x^2 + c1 x + c0 with c2 > 0, minimized over [lo, hi] (hi may be
/// +infinity).
struct Quadratic1D {
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();

  double operator()(double x) const { return (c2 * x + c1) * x + c0; }
};

/// Clamped vertex of a convex parabola: x* = clamp(-c1/(2 c2), lo, hi).
std::pair<double, double> argmin_quadratic(const Quadratic1D& q);

/// 1001-point bracketing scan followed by golden-section refinement.
/// Deterministic; for unimodal f the argmin is located within tol. Ties break
/// toward the smaller argument.
std::pair<double, double> minimize_scalar(const std::function<double(double)>& f,
                                          double lo, double hi, double tol);

}  // namespace sweep::optimizer
