#include "bellsq/bmo_bellman.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bellsq/errors.hpp"
#include "bellsq/quadrature.hpp"
#include "bellsq/roots.hpp"

namespace bellsq {

namespace {

void require_eps(double eps, const char* where) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    std::ostringstream msg;
    msg << where << ": strip width " << eps << " must be positive";
    throw DomainError(msg.str());
  }
}

void require_in_strip(Point2 p, double eps, const char* where) {
  if (!in_omega_eps(p, eps)) {
    std::ostringstream msg;
    msg << where << ": point (" << p.x << ", " << p.y << ") is outside omega_" << eps;
    throw DomainError(msg.str());
  }
}

}  // namespace

double slope_mR(double u, double eps, const BoundaryFunction& f) {
  require_eps(eps, "slope_mR");
  const double tail =
      exp_weighted_integral([&](double s) { return f(u - s); }, eps, f.growth_left());
  return f(u) / eps - tail / (eps * eps);
}

double slope_mL(double u, double eps, const BoundaryFunction& f) {
  require_eps(eps, "slope_mL");
  const double tail =
      exp_weighted_integral([&](double s) { return f(u + s); }, eps, f.growth_right());
  return -f(u) / eps + tail / (eps * eps);
}

double exp_slope_mR(double u, double eps, double lambda) {
  require_eps(eps, "exp_slope_mR");
  if (1.0 + lambda * eps <= 0.0) throw DivergenceError("exp_slope_mR: 1 + lambda * eps <= 0");
  return lambda * std::exp(lambda * u) / (1.0 + lambda * eps);
}

double exp_slope_mL(double u, double eps, double lambda) {
  require_eps(eps, "exp_slope_mL");
  if (1.0 - lambda * eps <= 0.0) throw DivergenceError("exp_slope_mL: lambda * eps >= 1");
  return lambda * std::exp(lambda * u) / (1.0 - lambda * eps);
}

double cup_residual(const BoundaryFunction& f, double a, double b) {
  return 0.5 * (f.d1(a) + f.d1(b)) - (f(b) - f(a)) / (b - a);
}

CupChord solve_cup(double l, const BoundaryFunction& f) {
  if (f.shape() != Shape::SINGLE_CUP) throw DomainError("solve_cup: " + f.name() + " has no cup");
  if (!(l >= 0.0) || !std::isfinite(l)) throw DomainError("solve_cup: chord length must be >= 0");
  const double c = f.vertex();
  if (l == 0.0) return {c, c};
  if (f.symmetric_about_vertex()) return {c - 0.5 * l, c + 0.5 * l};
  auto g = [&](double a) { return cup_residual(f, a, a + l); };
  auto dg = [&](double a) {
    const double b = a + l;
    return 0.5 * (f.d2(a) + f.d2(b)) - (f.d1(b) - f.d1(a)) / l;
  };
  const double a = bisect_newton(g, dg, c - l, c);
  return {a, a + l};
}

CupFoliation::CupFoliation(BoundaryFunction f, double eps) : f_(std::move(f)), eps_(eps) {
  require_eps(eps, "CupFoliation");
  const CupChord widest = solve_cup(2.0 * eps, f_);
  a2_ = widest.a;
  b2_ = widest.b;
  fa2_ = f_(a2_);
  fb2_ = f_(b2_);
}

double CupFoliation::slope_left(double u) const {
  const double k = (fb2_ + fa2_) / (2.0 * eps_);
  const double len = std::max(0.0, a2_ - u);
  const double tail = exp_weighted_integral_finite([&](double s) { return f_(u + s); }, eps_, len);
  return k * std::exp((u - a2_) / eps_) - f_(u) / eps_ + tail / (eps_ * eps_);
}

double CupFoliation::slope_right(double u) const {
  const double k = (fb2_ + fa2_) / (2.0 * eps_);
  const double len = std::max(0.0, u - b2_);
  const double tail = exp_weighted_integral_finite([&](double s) { return f_(u - s); }, eps_, len);
  return -k * std::exp((b2_ - u) / eps_) + f_(u) / eps_ - tail / (eps_ * eps_);
}

double CupFoliation::chord_length_through(Point2 p) const {
  const double gap = p.y - p.x * p.x;
  auto offset = [&](double l) {
    const CupChord ch = chord(l);
    return (p.x - ch.a) * (ch.b - p.x) - gap;
  };
  if (offset(2.0 * eps_) < 0.0) {
    // Round-off at the cup boundary.
    if (offset(2.0 * eps_) > -kDomainTol) return 2.0 * eps_;
    std::ostringstream msg;
    msg << "chord_length_through: (" << p.x << ", " << p.y << ") is outside the cup";
    throw DomainError(msg.str());
  }
  return bisect_root(offset, 0.0, 2.0 * eps_);
}

IndicatorDomain classify_indicator_domain(Point2 p, double eps) {
  require_eps(eps, "classify_indicator_domain");
  require_in_strip(p, eps, "classify_indicator_domain");
  const double x = p.x;
  const double y = p.y;
  if (y <= 2.0 * eps * x || x >= eps) return IndicatorDomain::D1;
  if (std::abs(x) <= eps && y >= 2.0 * eps * std::abs(x)) return IndicatorDomain::D2;
  if (y <= -2.0 * eps * x) return IndicatorDomain::D3;
  return IndicatorDomain::D4;
}

double indicator_bellman(Point2 p, double eps) {
  const double x = p.x;
  const double y = p.y;
  switch (classify_indicator_domain(p, eps)) {
    case IndicatorDomain::D1:
      return 1.0;
    case IndicatorDomain::D2:
      return 1.0 - (y - 2.0 * eps * x) / (8.0 * eps * eps);
    case IndicatorDomain::D3:
      return y > 0.0 ? 1.0 - x * x / y : 0.0;
    case IndicatorDomain::D4: {
      const double s = std::sqrt(std::max(0.0, 1.0 - (y - x * x) / (eps * eps)));
      return 0.5 * std::exp(1.0) * (1.0 - s) * std::exp(x / eps + s);
    }
  }
  return 0.0;
}

BellmanSurface::BellmanSurface(BoundaryFunction f, double eps, SlopeSource source)
    : f_(std::move(f)), eps_(eps), source_(source) {
  require_eps(eps, "BellmanSurface");
  switch (f_.shape()) {
    case Shape::D2_NONINCREASING:
      foliation_ = Foliation::RightTangents;
      break;
    case Shape::D2_NONDECREASING:
      foliation_ = Foliation::LeftTangents;
      break;
    case Shape::SINGLE_CUP:
      foliation_ = Foliation::Cup;
      cup_.emplace(f_, eps_);
      break;
    case Shape::INDICATOR:
      foliation_ = Foliation::IndicatorClosedForm;
      break;
  }
  // Fail at construction rather than at the first evaluation.
  if (foliation_ == Foliation::LeftTangents && f_.growth_right() * eps_ >= 1.0) {
    throw DivergenceError("BellmanSurface: " + f_.name() + " grows too fast for left tangents");
  }
  if (foliation_ == Foliation::RightTangents && f_.growth_left() * eps_ >= 1.0) {
    throw DivergenceError("BellmanSurface: " + f_.name() + " grows too fast for right tangents");
  }
}

double BellmanSurface::slope_left(double u) const {
  if (source_ == SlopeSource::Auto && f_.kind() == PayoffKind::Exp) {
    return exp_slope_mL(u, eps_, f_.param());
  }
  return slope_mL(u, eps_, f_);
}

double BellmanSurface::slope_right(double u) const {
  if (source_ == SlopeSource::Auto && f_.kind() == PayoffKind::Exp) {
    return exp_slope_mR(u, eps_, f_.param());
  }
  return slope_mR(u, eps_, f_);
}

double BellmanSurface::eval(Point2 p) const {
  require_in_strip(p, eps_, "eval_b");
  if (foliation_ == Foliation::IndicatorClosedForm) return indicator_bellman(p, eps_);
  if (p.y - p.x * p.x <= 0.0) return f_(p.x);
  switch (foliation_) {
    case Foliation::LeftTangents: {
      const double u = u_tangent(p, eps_, TangentSide::Left);
      return f_(u) + slope_left(u) * (p.x - u);
    }
    case Foliation::RightTangents: {
      const double u = u_tangent(p, eps_, TangentSide::Right);
      return f_(u) + slope_right(u) * (p.x - u);
    }
    case Foliation::Cup: {
      const double ul = u_tangent(p, eps_, TangentSide::Left);
      if (ul <= cup_->a2eps()) return f_(ul) + cup_->slope_left(ul) * (p.x - ul);
      const double ur = u_tangent(p, eps_, TangentSide::Right);
      if (ur >= cup_->b2eps()) return f_(ur) + cup_->slope_right(ur) * (p.x - ur);
      const double l = cup_->chord_length_through(p);
      if (l <= 0.0) return f_(p.x);
      const CupChord ch = cup_->chord(l);
      const double alpha = std::clamp((ch.b - p.x) / (ch.b - ch.a), 0.0, 1.0);
      return alpha * f_(ch.a) + (1.0 - alpha) * f_(ch.b);
    }
    case Foliation::IndicatorClosedForm:
      break;
  }
  return indicator_bellman(p, eps_);
}

}  // namespace bellsq
