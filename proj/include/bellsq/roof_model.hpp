#pragma once

#include "bellsq/geometry.hpp"

namespace bellsq {

// Psi(v) = 1 - ((sqrt(2 - v^2) - v)/4) e^{-arcsin(v/sqrt2) - pi/4}, |v| <= 1.
double psi(double v);
// Psi'(v) = e^{-arcsin(v/sqrt2) - pi/4} / 2.
double psi_derivative(double v);

// t(v) = 2 e^{arcsin(v/sqrt2) + pi/4} / (sqrt(2 - v^2) - v), v in [-1, 1).
// Psi(v) = 1 - 1/(2 t(v)).
double t_of_v(double v);
// Inverse of t_of_v on [1, inf).
double v_of_t(double t);

// Solution of the model problem on omega_smile. Throws DomainError outside.
struct ModelPoint {
  double x = 0.0;
  double y = 0.0;
  double rho = 0.0;  // x / sqrt(2 (y - x^2))
};
ModelPoint make_model_point(double x, double y);
double model_M(const ModelPoint& p);
double model_M(double x, double y);

struct TangentAux {
  double c = 0.0;
  double v = 0.0;
  double u = 0.0;
};

// Right: v = x - sqrt(x^2 + c^2 - y), requires max(-2cx, x^2) <= y <= x^2 + c^2.
// Left:  v = x + sqrt(x^2 + c^2 - y), requires max(2cx, x^2) <= y <= x^2 + c^2.
// Both: u = (v + sqrt(2c^2 - v^2)) / 2.
TangentAux tangent_aux(double x, double y, double c, TangentSide side);

double G_right(double x, double y, double c);
double G_left(double x, double y, double c);

// B on the roof, as a function of (x, y) in omega_1. With eps = sqrt(y - x^2)
// the point sits on top of omega_eps; in region D2 there the value is the
// model solution, elsewhere it is the indicator b_eps. On the lower boundary
// it is the payoff.
double roof_B(Point2 p);

// Tangent plane of the model solution at (x0, y0) in omega_smile, restricted
// to the line of slope 2 x0 through that point, evaluated at abscissa xbar.
double roof_tangent_plane(Point2 p0, double xbar);

// F(alpha, gamma) for 0 <= alpha <= gamma <= pi/2.
double F_kernel(double alpha, double gamma);

}  // namespace bellsq
