#include "bellsq/roof_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bellsq/bmo_bellman.hpp"
#include "bellsq/errors.hpp"
#include "bellsq/roots.hpp"

namespace bellsq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kArcsinSlack = 1e-14;

double clamp_unit(double r, const char* where) {
  if (std::abs(r) > 1.0 + kArcsinSlack || std::isnan(r)) {
    std::ostringstream msg;
    msg << where << ": argument " << r << " is outside [-1, 1]";
    throw DomainError(msg.str());
  }
  return std::clamp(r, -1.0, 1.0);
}

[[noreturn]] void outside(const char* where, double x, double y) {
  std::ostringstream msg;
  msg << where << ": point (" << x << ", " << y << ") is outside its domain";
  throw DomainError(msg.str());
}

}  // namespace

double psi(double v) {
  v = clamp_unit(v, "psi");
  const double w = std::sqrt(2.0 - v * v) - v;
  return 1.0 - 0.25 * w * std::exp(-std::asin(v / kSqrt2) - 0.25 * kPi);
}

double psi_derivative(double v) {
  v = clamp_unit(v, "psi_derivative");
  return 0.5 * std::exp(-std::asin(v / kSqrt2) - 0.25 * kPi);
}

double t_of_v(double v) {
  v = clamp_unit(v, "t_of_v");
  const double w = std::sqrt(2.0 - v * v) - v;
  if (!(w > 0.0)) throw DomainError("t_of_v: infinite at v = 1");
  return 2.0 / w * std::exp(std::asin(v / kSqrt2) + 0.25 * kPi);
}

double v_of_t(double t) {
  if (!(t >= 1.0) || !std::isfinite(t)) throw DomainError("v_of_t: t must be in [1, inf)");
  if (t == 1.0) return -1.0;
  const double hi = 1.0 - 1e-15;
  if (t_of_v(hi) < t) throw DomainError("v_of_t: t is beyond double resolution of v");
  return bisect_root([t](double v) { return t_of_v(v) - t; }, -1.0, hi);
}

ModelPoint make_model_point(double x, double y) {
  if (!in_omega_smile({x, y})) outside("model_M", x, y);
  const double gap = y - x * x;
  ModelPoint p{x, y, 0.0};
  if (gap > 0.0) {
    p.rho = std::clamp(x / std::sqrt(2.0 * gap), -1.0, 1.0);
  } else {
    // Only the corner (0, 0) has zero gap inside omega_smile.
    p.rho = 1.0;
  }
  return p;
}

double model_M(const ModelPoint& p) {
  const double r = p.rho;
  const double w = std::sqrt(std::max(0.0, 1.0 - r * r)) - r;
  return 1.0 - w / (2.0 * kSqrt2) * std::exp(-std::asin(r) - 0.25 * kPi);
}

double model_M(double x, double y) { return model_M(make_model_point(x, y)); }

TangentAux tangent_aux(double x, double y, double c, TangentSide side) {
  const double tol = kDomainTol;
  const double gap = y - x * x;
  const double lower = side == TangentSide::Right ? -2.0 * c * x : 2.0 * c * x;
  if (!(c > 0.0) || c > 1.0 + tol || gap < -tol || gap > c * c + tol || y < lower - tol) {
    std::ostringstream msg;
    msg << "tangent_aux: (" << x << ", " << y << ", c=" << c << ") violates the preconditions";
    throw DomainError(msg.str());
  }
  const double root = std::sqrt(std::max(0.0, c * c - gap));
  const double v = std::clamp(side == TangentSide::Right ? x - root : x + root, -c, c);
  const double u = 0.5 * (v + std::sqrt(std::max(0.0, 2.0 * c * c - v * v)));
  return {c, v, u};
}

namespace {

double g_interp(double x, const TangentAux& a) {
  const double span = a.u - a.v;
  if (span == 0.0) return psi(a.v / a.c);
  return (a.u - x) / span * (psi(a.v / a.c) - 1.0) + 1.0;
}

}  // namespace

double G_right(double x, double y, double c) {
  return g_interp(x, tangent_aux(x, y, c, TangentSide::Right));
}

double G_left(double x, double y, double c) {
  return g_interp(x, tangent_aux(x, y, c, TangentSide::Left));
}

double roof_B(Point2 p) {
  const double gap = p.y - p.x * p.x;
  if (!in_omega_eps(p, 1.0)) outside("roof_B", p.x, p.y);
  if (gap <= 0.0) return p.x >= 0.0 ? 1.0 : 0.0;
  const double eps = std::sqrt(gap);
  if (classify_indicator_domain(p, eps) != IndicatorDomain::D2) return indicator_bellman(p, eps);
  return model_M(ModelPoint{p.x, p.y, std::clamp(p.x / std::sqrt(2.0 * gap), -1.0, 1.0)});
}

double roof_tangent_plane(Point2 p0, double xbar) {
  if (!in_omega_smile(p0)) outside("roof_tangent_plane", p0.x, p0.y);
  const double c0 = std::sqrt(p0.y - p0.x * p0.x);
  if (!(c0 > 0.0)) outside("roof_tangent_plane", p0.x, p0.y);
  const double r0 = std::clamp(p0.x / c0, -1.0, 1.0);
  return psi(r0) + psi_derivative(r0) * (xbar - p0.x) / c0;
}

double F_kernel(double alpha, double gamma) {
  if (!(alpha >= 0.0 && alpha <= gamma && gamma <= 0.5 * kPi + 1e-15)) {
    std::ostringstream msg;
    msg << "F_kernel: need 0 <= alpha <= gamma <= pi/2, got (" << alpha << ", " << gamma << ")";
    throw DomainError(msg.str());
  }
  const double tail = (std::cos(alpha) + std::sin(gamma)) * std::exp(-alpha);
  if (alpha == gamma) return std::exp(-gamma) * (std::sin(gamma) + std::cos(gamma)) - 1.0;
  const double cg = std::cos(gamma);
  if (cg <= 0.0) return tail - 2.0;
  return std::exp(1.0 + (std::sin(alpha) - std::cos(alpha) - std::sin(gamma)) / cg) - 2.0 + tail;
}

}  // namespace bellsq
