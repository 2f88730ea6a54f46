#pragma once

#include <cmath>
#include <sstream>
#include <utility>

#include <boost/math/tools/roots.hpp>

#include "bellsq/errors.hpp"

namespace bellsq {

inline constexpr double kRootTol = 1e-12;

// Root of g on [lo, hi] where g changes sign: bisection down to a few ulps,
// then Newton steps with dg while they stay in the bracket and shrink |g|.
template <class G, class DG>
double bisect_newton(G&& g, DG&& dg, double lo, double hi) {
  double glo = g(lo);
  double ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if ((glo > 0.0) == (ghi > 0.0)) {
    std::ostringstream msg;
    msg << "root not bracketed on [" << lo << ", " << hi << "]: g = " << glo << ", " << ghi;
    throw RootFindingError(msg.str());
  }
  boost::math::tools::eps_tolerance<double> stop(50);
  std::uintmax_t max_iter = 200;
  const auto [a, b] = boost::math::tools::bisect(g, lo, hi, stop, max_iter);
  double x = 0.5 * (a + b);
  double gx = g(x);
  for (int k = 0; k < 3 && gx != 0.0; ++k) {
    const double slope = dg(x);
    if (!(std::abs(slope) > 0.0) || !std::isfinite(slope)) break;
    const double next = x - gx / slope;
    if (!(next >= lo && next <= hi)) break;
    const double gn = g(next);
    if (!(std::abs(gn) < std::abs(gx))) break;
    x = next;
    gx = gn;
  }
  return x;
}

// Plain bisection for monotone g without a usable derivative.
template <class G>
double bisect_root(G&& g, double lo, double hi) {
  return bisect_newton(std::forward<G>(g), [](double) { return 0.0; }, lo, hi);
}

}  // namespace bellsq
