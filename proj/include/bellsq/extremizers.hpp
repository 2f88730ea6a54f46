#pragma once

#include <functional>

#include "bellsq/geometry.hpp"
#include "bellsq/martingale_tree.hpp"

namespace bellsq {

// (f(x - d) + f(x + d)) / 2 with d = sqrt(y - x^2).
double two_point_value(Point2 p, const std::function<double(double)>& f);

// One split of s to x -+ sqrt(y - x^2). Throws DomainError if s is outside Omega.
MartingaleTree extremize_two_point(const State3& s);

// N steps along the parabola y - x^2 = y0 - x0^2 from x0 to x_target, each
// leaking mass to the lower boundary at distance eps_n behind the walk; the
// last node is resolved by a symmetric split.
MartingaleTree extremize_parabola_chain(const State3& s0, double x_target, int steps);

// Geometric chain from s0 towards `target` along the ray from (t, t^2),
// leaking mass to the anchor leaf at (t, t^2); the target-side end node is
// resolved by a symmetric split. s0 must lie on the segment between the
// anchor and the target.
MartingaleTree extremize_scaling_chain(const State3& s0, Point2 target, double anchor, int steps);

// Weight of the target end of the scaling chain: s0 = alpha target + (1 - alpha) anchor.
double scaling_alpha(Point2 s0, Point2 target, double anchor);

inline constexpr double kRoofEta = 1e-4;

// Indicator extremizer on the roof started at (c0 v0, c0^2 (v0^2 + 1)) with
// z0 = sqrt(1 - c0^2). Walks left along the roof in `steps` equal moves of
// the mean, shedding mass to points of y = 2x^2 that are split into {0, 2x};
// stops once x/c reaches -1 + eta and resolves the end by a symmetric split.
MartingaleTree extremize_roof_indicator(double v0, double c0, int steps, double eta = kRoofEta);

// Limit of the roof chain expectation as steps -> inf at fixed eta.
double roof_chain_limit(double v0, double eta = kRoofEta);

}  // namespace bellsq
