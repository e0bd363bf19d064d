#include "sweep/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include "sweep/errors.hpp"

namespace sweep::optimizer {

std::pair<double, double> argmin_quadratic(const Quadratic1D& q) {
  if (q.c2 <= 0.0) {
    throw ModelError(Fault::BadArguments, "quadratic must be strictly convex");
  }
  if (!(q.lo <= q.hi)) {
    throw ModelError(Fault::EmptyInterval, "lo > hi");
  }
  const double x = std::clamp(-q.c1 / (2.0 * q.c2), q.lo, q.hi);
  return {x, q(x)};
}

std::pair<double, double> minimize_scalar(const std::function<double(double)>& f,
                                          double lo, double hi, double tol) {
  if (!(lo <= hi)) throw ModelError(Fault::EmptyInterval, "lo > hi");
  if (!(tol > 0.0)) throw ModelError(Fault::BadArguments, "tol must be positive");
  if (lo == hi) return {lo, f(lo)};

  constexpr int kScanPoints = 1001;
  int best = 0;
  double best_val = f(lo);
  for (int i = 1; i < kScanPoints; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / (kScanPoints - 1);
    const double v = f(x);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double step = (hi - lo) / (kScanPoints - 1);
  double a = std::max(lo, lo + (best - 1) * step);
  double b = std::min(hi, lo + (best + 1) * step);

  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  const double x = a;  // tie-break toward the smaller argument
  return {x, f(x)};
}

}  // namespace sweep::optimizer
