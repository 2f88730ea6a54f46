#include "bellsq/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bellsq/errors.hpp"

namespace bellsq {

namespace {

// Distance by which s violates the inequalities defining Omega.
double omega_excess(const State3& s) {
  const double gap = s.y - s.x * s.x;
  double excess = std::max(0.0, -gap);
  excess = std::max(excess, gap - (1.0 - s.z * s.z));
  excess = std::max(excess, -s.z);
  excess = std::max(excess, s.z - 1.0);
  return excess;
}

}  // namespace

bool in_omega_eps(Point2 p, double eps) {
  const double gap = p.y - p.x * p.x;
  return gap >= -kDomainTol && gap <= eps * eps + kDomainTol;
}

bool in_Omega(const State3& s) { return omega_excess(s) <= kDomainTol; }

bool in_omega_smile(Point2 p) {
  return std::abs(p.x) <= 1.0 + kDomainTol && p.y >= 2.0 * p.x * p.x - kDomainTol &&
         p.y <= p.x * p.x + 1.0 + kDomainTol;
}

bool on_roof(const State3& s, double tol) {
  return std::abs(s.y - s.x * s.x - (1.0 - s.z * s.z)) <= tol;
}

Point2 parabolic_shift(Point2 p, double tau) {
  return {p.x - tau, p.y + tau * tau - 2.0 * tau * p.x};
}

State3 parabolic_shift(const State3& s, double tau) {
  const Point2 q = parabolic_shift(s.xy(), tau);
  return {q.x, q.y, s.z};
}

SplitEvent parabolic_shift(const SplitEvent& e, double tau) {
  SplitEvent out{parabolic_shift(e.parent, tau), {}};
  out.children.reserve(e.children.size());
  for (const auto& c : e.children) out.children.push_back({c.weight, parabolic_shift(c.state, tau)});
  return out;
}

double u_tangent(Point2 p, double eps, TangentSide side) {
  if (!(eps > 0.0) || !in_omega_eps(p, eps)) {
    std::ostringstream msg;
    msg << "u_tangent: point (" << p.x << ", " << p.y << ") is outside omega_" << eps;
    throw DomainError(msg.str());
  }
  // Strip-top points sit exactly at the far end of their tangent.
  const double radicand = std::max(0.0, eps * eps + p.x * p.x - p.y);
  const double root = std::sqrt(radicand);
  return side == TangentSide::Left ? p.x - eps + root : p.x + eps - root;
}

double SplitResidual::max() const {
  return std::max({weights, mean, second_moment, budget, domain, strip});
}

SplitResidual split_residual(const SplitEvent& e) {
  SplitResidual r;
  const State3& p = e.parent;
  double wsum = 0.0;
  double xsum = 0.0;
  double ysum = 0.0;
  r.domain = omega_excess(p);
  const double strip_width2 = 1.0 - p.z * p.z;
  for (const auto& [w, c] : e.children) {
    r.weights = std::max({r.weights, -w, w - 1.0});
    wsum += w;
    xsum += w * c.x;
    ysum += w * c.y;
    const double dx = c.x - p.x;
    r.budget = std::max(r.budget, std::abs(c.z * c.z - p.z * p.z - dx * dx));
    r.domain = std::max(r.domain, omega_excess(c));
    const double gap = c.y - c.x * c.x;
    r.strip = std::max({r.strip, -gap, gap - strip_width2});
  }
  if (e.children.empty()) r.weights = 1.0;
  r.weights = std::max(r.weights, std::abs(wsum - 1.0));
  r.mean = std::abs(xsum - p.x);
  r.second_moment = std::abs(ysum - p.y);
  return r;
}

bool admissible_split(const SplitEvent& e, double tol) { return split_residual(e).max() <= tol; }

}  // namespace bellsq
