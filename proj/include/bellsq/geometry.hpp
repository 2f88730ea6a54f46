#pragma once

#include <vector>

namespace bellsq {

// Absolute slack on the defining inequalities of every domain; boundary
// points count as inside.
inline constexpr double kDomainTol = 1e-9;

// (mean, second moment) coordinates of the parabolic strips.
struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// (mean, second moment, square-function budget already used).
struct State3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Point2 xy() const { return {x, y}; }
};

struct WeightedChild {
  double weight = 0.0;
  State3 state;
};

// One step of a martingale: a parent state split into weighted children.
struct SplitEvent {
  State3 parent;
  std::vector<WeightedChild> children;
};

enum class TangentSide { Left, Right };

// omega_eps = { x^2 <= y <= x^2 + eps^2 }.
bool in_omega_eps(Point2 p, double eps);

// Omega = { x^2 <= y <= 1 - z^2 + x^2, 0 <= z <= 1 }.
bool in_Omega(const State3& s);

// omega_smile = { 2x^2 <= y <= x^2 + 1, |x| <= 1 }.
bool in_omega_smile(Point2 p);

// Upper boundary y - x^2 = 1 - z^2 of Omega.
bool on_roof(const State3& s, double tol = kDomainTol);

// (x, y) -> (x - tau, y + tau^2 - 2 tau x). Preserves y - x^2, and preserves
// the splitting rules when applied to every point of an event (z untouched).
Point2 parabolic_shift(Point2 p, double tau);
State3 parabolic_shift(const State3& s, double tau);
SplitEvent parabolic_shift(const SplitEvent& e, double tau);

// Tangency abscissa u of the left (resp. right) tangent through p: the segment
// from (u, u^2) to (u +- eps, (u +- eps)^2 + eps^2) that contains p.
// Throws DomainError if p is outside omega_eps.
double u_tangent(Point2 p, double eps, TangentSide side);

// Largest residual of each splitting rule; all zero for an exact event.
struct SplitResidual {
  double weights = 0.0;        // negative weights, weights above 1, |sum - 1|
  double mean = 0.0;           // |sum w x_j - x|
  double second_moment = 0.0;  // |sum w y_j - y|
  double budget = 0.0;         // |z_j^2 - z^2 - (x_j - x)^2|
  double domain = 0.0;         // distance outside Omega, parent or child
  double strip = 0.0;          // child (x_j, y_j) outside omega_{sqrt(1 - z^2)}

  double max() const;
};

SplitResidual split_residual(const SplitEvent& e);

bool admissible_split(const SplitEvent& e, double tol = kDomainTol);

}  // namespace bellsq
