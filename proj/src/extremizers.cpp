#include "bellsq/extremizers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bellsq/errors.hpp"
#include "bellsq/roof_model.hpp"
#include "bellsq/roots.hpp"

namespace bellsq {

namespace {

void require_in_Omega(const State3& s, const char* where) {
  if (!in_Omega(s)) {
    std::ostringstream msg;
    msg << where << ": state (" << s.x << ", " << s.y << ", " << s.z << ") is outside Omega";
    throw DomainError(msg.str());
  }
}

void require_steps(int steps, int minimum, const char* where) {
  if (steps < minimum) {
    std::ostringstream msg;
    msg << where << ": need at least " << minimum << " steps, got " << steps;
    throw DomainError(msg.str());
  }
}

State3 on_parabola(double x, double z) { return {x, x * x, z}; }

}  // namespace

double two_point_value(Point2 p, const std::function<double(double)>& f) {
  const double d = std::sqrt(std::max(0.0, p.y - p.x * p.x));
  return 0.5 * (f(p.x - d) + f(p.x + d));
}

MartingaleTree extremize_two_point(const State3& s) {
  require_in_Omega(s, "extremize_two_point");
  MartingaleTree t(s);
  t.add_symmetric_split(0);
  return t;
}

MartingaleTree extremize_parabola_chain(const State3& s0, double x_target, int steps) {
  require_in_Omega(s0, "extremize_parabola_chain");
  require_steps(steps, 1, "extremize_parabola_chain");
  const double eps2 = s0.y - s0.x * s0.x;
  if (!(eps2 > 0.0)) throw DomainError("extremize_parabola_chain: start is on the lower boundary");
  if (x_target == s0.x) throw DomainError("extremize_parabola_chain: target equals start");
  const double t = (x_target - s0.x) / steps;
  const double step = std::abs(t);
  const double final_eps2 = eps2 - steps * t * t;
  if (!(final_eps2 > 0.0)) {
    std::ostringstream msg;
    msg << "extremize_parabola_chain: " << steps << " steps are too few (eps_N^2 = " << final_eps2
        << ")";
    throw DomainError(msg.str());
  }
  // Leaves trail the walk: behind it for rightward chains, ahead for leftward.
  const double side = t > 0.0 ? -1.0 : 1.0;

  MartingaleTree tree(s0);
  std::size_t cur = 0;
  double x = s0.x;
  double e2 = eps2;
  double z2 = s0.z * s0.z;
  for (int n = 0; n < steps; ++n) {
    const double e = std::sqrt(e2);
    const double xn = s0.x + (n + 1) * t;
    const double en2 = eps2 - (n + 1) * t * t;
    const double zn2 = s0.z * s0.z + (n + 1) * t * t;
    const double leaf = x + side * e;
    const std::size_t next = tree.add_child(cur, e / (step + e), {xn, xn * xn + en2, std::sqrt(zn2)});
    tree.add_child(cur, step / (step + e), on_parabola(leaf, std::sqrt(z2 + e2)));
    cur = next;
    x = xn;
    e2 = en2;
    z2 = zn2;
  }
  tree.add_symmetric_split(cur);
  return tree;
}

double scaling_alpha(Point2 s0, Point2 target, double anchor) {
  const Point2 a = parabolic_shift(s0, anchor);
  const Point2 b = parabolic_shift(target, anchor);
  return std::abs(b.x) >= std::abs(b.y) ? a.x / b.x : a.y / b.y;
}

MartingaleTree extremize_scaling_chain(const State3& s0, Point2 target, double anchor, int steps) {
  require_in_Omega(s0, "extremize_scaling_chain");
  require_steps(steps, 1, "extremize_scaling_chain");
  const Point2 tgt = parabolic_shift(target, anchor);
  const Point2 start = parabolic_shift(s0.xy(), anchor);
  if (tgt.y < 2.0 * tgt.x * tgt.x - kDomainTol) {
    throw DomainError("extremize_scaling_chain: target is below y - t^2 = 2 (x - t)^2");
  }
  const double target_gap = target.y - target.x * target.x;
  if (target_gap < -kDomainTol || !(target_gap < 1.0 - s0.z * s0.z)) {
    throw DomainError("extremize_scaling_chain: target gap must lie in [0, 1 - z0^2)");
  }
  if (!(tgt.y > 0.0)) throw DomainError("extremize_scaling_chain: target equals the anchor");
  const double alpha = scaling_alpha(s0.xy(), target, anchor);
  if (!(alpha > 0.0 && alpha <= 1.0 + kDomainTol) ||
      std::abs(start.x - alpha * tgt.x) > kDomainTol || std::abs(start.y - alpha * tgt.y) > kDomainTol) {
    throw DomainError("extremize_scaling_chain: start is not on the segment from the anchor to the target");
  }

  // Built around the anchor at the origin, shifted back at the end.
  MartingaleTree local({start.x, start.y, s0.z});
  std::size_t cur = 0;
  if (alpha < 1.0) {
    const double lambda = 1.0 / alpha;
    const double stay = std::pow(lambda, -1.0 / steps);
    double x = start.x;
    double z2 = s0.z * s0.z;
    for (int n = 1; n <= steps; ++n) {
      // Exact endpoint on the last step.
      const double scale = n == steps ? 1.0 / alpha : std::pow(lambda, static_cast<double>(n) / steps);
      const double xn = n == steps ? tgt.x : scale * start.x;
      const double yn = n == steps ? tgt.y : scale * start.y;
      const double dx = xn - x;
      const double zn2 = z2 + dx * dx;
      const std::size_t next = local.add_child(cur, stay, {xn, yn, std::sqrt(zn2)});
      local.add_child(cur, 1.0 - stay, {0.0, 0.0, std::sqrt(z2 + x * x)});
      cur = next;
      x = xn;
      z2 = zn2;
    }
  }
  local.add_symmetric_split(cur);
  const State3 end = local.node(cur).state;
  if (!in_Omega(end)) {
    std::ostringstream msg;
    msg << "extremize_scaling_chain: end of chain leaves Omega (z = " << end.z
        << "); use more steps";
    throw DomainError(msg.str());
  }

  MartingaleTree tree(s0);
  for (std::size_t i = 0; i < local.size(); ++i) {
    for (const auto& e : local.node(i).children) {
      const std::size_t got = tree.add_child(i, e.weight, parabolic_shift(local.node(e.child).state, -anchor));
      if (got != e.child) throw InvalidTreeError("extremize_scaling_chain: index mismatch");
    }
  }
  return tree;
}

MartingaleTree extremize_roof_indicator(double v0, double c0, int steps, double eta) {
  if (!(v0 >= -1.0 && v0 < 1.0)) throw DomainError("extremize_roof_indicator: v0 must be in [-1, 1)");
  if (!(c0 > 0.0 && c0 <= 1.0)) throw DomainError("extremize_roof_indicator: c0 must be in (0, 1]");
  require_steps(steps, 100, "extremize_roof_indicator");
  const double stop_ratio = -1.0 + eta;
  const double x0 = c0 * v0;
  const State3 root{x0, x0 * x0 + c0 * c0, std::sqrt(std::max(0.0, 1.0 - c0 * c0))};
  MartingaleTree tree(root);

  // The chain carries (x, c^2) exactly; y and z are derived from them.
  auto roof_state = [](double x, double c2) {
    return State3{x, x * x + c2, std::sqrt(std::max(0.0, 1.0 - c2))};
  };

  std::size_t cur = 0;
  if (v0 > stop_ratio) {
    // End abscissa whose ratio x/c after `steps` equal moves is the stop ratio.
    const double n = steps;
    auto ratio_gap = [&](double xe) {
      const double c2 = c0 * c0 - (x0 - xe) * (x0 - xe) / n;
      return xe / std::sqrt(c2) - stop_ratio;
    };
    const double lo = x0 - c0 * std::sqrt(n) * (1.0 - 1e-12);
    const double x_end = bisect_root(ratio_gap, lo, x0);
    const double delta = (x0 - x_end) / n;

    double x = x0;
    double c2 = c0 * c0;
    for (int k = 0; k < steps; ++k) {
      const double disc = 2.0 * c2 - x * x;
      if (disc < 0.0) throw DomainError("extremize_roof_indicator: step too large (2c^2 < v^2)");
      const double phi = 0.5 * (x + std::sqrt(disc));
      const double w = delta / (phi - x + delta);
      const double xn = (k + 1 == steps) ? x_end : x - delta;
      const double cn2 = c2 - delta * delta;
      const std::size_t next = tree.add_child(cur, 1.0 - w, roof_state(xn, cn2));
      const double phi_z2 = 1.0 - c2 + (phi - x) * (phi - x);
      const std::size_t mid = tree.add_child(cur, w, {phi, 2.0 * phi * phi, std::sqrt(phi_z2)});
      const double leaf_z = std::sqrt(phi_z2 + phi * phi);
      tree.add_child(mid, 0.5, {0.0, 0.0, leaf_z});
      tree.add_child(mid, 0.5, {2.0 * phi, 4.0 * phi * phi, leaf_z});
      cur = next;
      x = xn;
      c2 = cn2;
    }
  }
  // Split with the carried c so that x + c is exactly 0 when x/c = -1.
  const State3 end = tree.node(cur).state;
  const double c = std::sqrt(std::max(0.0, end.y - end.x * end.x));
  const double d = cur == 0 ? c0 : c;
  const double lo = end.x - d;
  const double hi = end.x + d;
  tree.add_child(cur, 0.5, {lo, lo * lo, 1.0});
  tree.add_child(cur, 0.5, {hi, hi * hi, 1.0});
  return tree;
}

double roof_chain_limit(double v0, double eta) {
  if (v0 <= -1.0 + eta) return 0.5;
  return 1.0 - t_of_v(-1.0 + eta) / (2.0 * t_of_v(v0));
}

}  // namespace bellsq
