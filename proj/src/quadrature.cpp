#include "bellsq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bellsq/errors.hpp"

namespace bellsq {

namespace {

constexpr int kMaxDepth = 15;
constexpr int kMaxPanels = 4000;

struct Panel {
  double value;
  double error;
  double l1;
  double a;
  double b;
};

// One 21-point Gauss-Kronrod rule on [a, b], mapped onto [-1, 1] so that the
// reported error and L1 norm are in the units of the integral. (The adaptive
// driver in Boost 1.74 leaves sub-interval errors unscaled.)
Panel kronrod_rule(const std::function<double(double)>& integrand, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  auto h = [&](double t) { return half * integrand(mid + half * t); };
  double error = 0.0;
  double l1 = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 21>::integrate(h, -1.0, 1.0, 0, 0.0, &error, &l1);
  return {value, error, l1, a, b};
}

Panel adaptive(const std::function<double(double)>& integrand, double a, double b, double tol,
               int depth) {
  const Panel whole = kronrod_rule(integrand, a, b);
  if (depth == 0 || !(whole.error > tol * whole.l1)) return whole;
  const double mid = 0.5 * (a + b);
  const Panel left = adaptive(integrand, a, mid, tol, depth - 1);
  const Panel right = adaptive(integrand, mid, b, tol, depth - 1);
  return {left.value + right.value, left.error + right.error, left.l1 + right.l1, a, b};
}

Panel integrate_panel(const std::function<double(double)>& g, double eps, double a, double b,
                      double tol) {
  const std::function<double(double)> integrand = [&](double s) { return std::exp(-s / eps) * g(s); };
  return adaptive(integrand, a, b, tol, kMaxDepth);
}

void check_panel_error(const Panel& p, double total_l1, double tol) {
  if (!std::isfinite(p.value)) {
    throw QuadratureError("quadrature: non-finite panel value", std::numeric_limits<double>::infinity());
  }
  if (p.error > 100.0 * tol * std::max(total_l1, 1e-300) && p.error > 1e-300) {
    std::ostringstream msg;
    msg << "quadrature: error " << p.error << " on panel [" << p.a << ", " << p.b
        << "] exceeds the target (L1 so far " << total_l1 << ")";
    throw QuadratureError(msg.str(), p.error / std::max(total_l1, 1e-300));
  }
}

}  // namespace

double exp_weighted_integral(const std::function<double(double)>& g, double eps, double rate,
                             double tol) {
  if (!(eps > 0.0)) throw DomainError("exp_weighted_integral: eps must be positive");
  const double kappa = 1.0 / eps - rate;
  if (!(kappa > 0.0)) {
    std::ostringstream msg;
    msg << "integral diverges: growth rate " << rate << " is not below 1/eps = " << 1.0 / eps;
    throw DivergenceError(msg.str());
  }
  // The integrand decays at least like e^{-kappa s}, so the tail beyond a
  // panel is at most ratio/(1 - ratio) times that panel. Stopping on this
  // bound rather than a fixed length keeps g away from overflow when
  // kappa is small.
  const double width = 4.0 / kappa;
  const double min_length = 16.0 / kappa;
  const double ratio = std::exp(-4.0);
  const double tail_factor = ratio / (1.0 - ratio);
  double sum = 0.0;
  double total_l1 = 0.0;
  double a = 0.0;
  for (int k = 0; k < kMaxPanels; ++k) {
    const double b = a + width;
    const Panel p = integrate_panel(g, eps, a, b, tol);
    sum += p.value;
    total_l1 += p.l1;
    check_panel_error(p, total_l1, tol);
    a = b;
    if (a >= min_length && p.l1 * tail_factor <= 1e-2 * tol * total_l1) return sum;
    if (a >= min_length && total_l1 == 0.0) return sum;
  }
  throw QuadratureError("quadrature: panel budget exhausted before the tail became negligible",
                        total_l1 > 0.0 ? 1.0 : 0.0);
}

double exp_weighted_integral_finite(const std::function<double(double)>& g, double eps,
                                    double length, double tol) {
  if (!(eps > 0.0)) throw DomainError("exp_weighted_integral_finite: eps must be positive");
  if (length < 0.0) throw DomainError("exp_weighted_integral_finite: negative length");
  if (length == 0.0) return 0.0;
  // Gauss-Kronrod error estimates are unreliable on intervals near rounding
  // level; the midpoint rule is exact to O(length^3) there.
  if (length <= 1e-6 * eps) return length * std::exp(-0.5 * length / eps) * g(0.5 * length);
  const int panels = std::max(1, static_cast<int>(std::ceil(length / (8.0 * eps))));
  const double width = length / panels;
  double sum = 0.0;
  double total_l1 = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double a = k * width;
    const double b = (k + 1 == panels) ? length : a + width;
    const Panel p = integrate_panel(g, eps, a, b, tol);
    sum += p.value;
    total_l1 += p.l1;
    check_panel_error(p, total_l1, tol);
  }
  return sum;
}

}  // namespace bellsq
