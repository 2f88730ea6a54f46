#pragma once

#include <optional>

#include "bellsq/boundary_functions.hpp"
#include "bellsq/geometry.hpp"

namespace bellsq {

// Tangent slopes for a foliation by right (resp. left) tangents, by
// quadrature. slope_mL throws DivergenceError when f grows too fast to the
// right for the strip width (for e^{lambda t}: lambda * eps >= 1), and
// slope_mR likewise to the left.
double slope_mR(double u, double eps, const BoundaryFunction& f);
double slope_mL(double u, double eps, const BoundaryFunction& f);

// Closed forms of the same slopes for f(t) = e^{lambda t}.
double exp_slope_mR(double u, double eps, double lambda);
double exp_slope_mL(double u, double eps, double lambda);

struct CupChord {
  double a = 0.0;
  double b = 0.0;
};

// (f'(a) + f'(b))/2 - (f(b) - f(a))/(b - a).
double cup_residual(const BoundaryFunction& f, double a, double b);

// Chord [a, b] of length l solving the cup equation, with a <= vertex <= b.
CupChord solve_cup(double l, const BoundaryFunction& f);

// Chords of lengths up to 2 eps around the vertex, plus the tangent slopes
// continuing the foliation beyond the widest chord.
class CupFoliation {
 public:
  CupFoliation(BoundaryFunction f, double eps);

  double eps() const { return eps_; }
  double vertex() const { return f_.vertex(); }
  double a2eps() const { return a2_; }
  double b2eps() const { return b2_; }
  CupChord chord(double l) const { return solve_cup(l, f_); }

  // Slope of the left tangent at u <= a(2 eps).
  double slope_left(double u) const;
  // Slope of the right tangent at u >= b(2 eps).
  double slope_right(double u) const;
  // Length of the chord through p; p must lie in the cup.
  double chord_length_through(Point2 p) const;

 private:
  BoundaryFunction f_;
  double eps_;
  double a2_;
  double b2_;
  double fa2_;
  double fb2_;
};

enum class Foliation { RightTangents, LeftTangents, Cup, IndicatorClosedForm };
enum class SlopeSource {
  Auto,        // closed-form slopes where the payoff has them
  Quadrature,  // always integrate
};

enum class IndicatorDomain { D1 = 1, D2 = 2, D3 = 3, D4 = 4 };

// Region of omega_eps for the indicator surface; points on a shared boundary
// go to the lower index.
IndicatorDomain classify_indicator_domain(Point2 p, double eps);

// b_eps for f = indicator of [0, inf).
double indicator_bellman(Point2 p, double eps);

class BellmanSurface {
 public:
  BellmanSurface(BoundaryFunction f, double eps, SlopeSource source = SlopeSource::Auto);

  double eps() const { return eps_; }
  Foliation foliation() const { return foliation_; }
  const BoundaryFunction& payoff() const { return f_; }
  const CupFoliation* cup() const { return cup_ ? &*cup_ : nullptr; }

  // Throws DomainError outside omega_eps.
  double eval(Point2 p) const;
  double operator()(Point2 p) const { return eval(p); }

 private:
  double slope_left(double u) const;
  double slope_right(double u) const;

  BoundaryFunction f_;
  double eps_;
  SlopeSource source_;
  Foliation foliation_;
  std::optional<CupFoliation> cup_;
};

inline double eval_b(const BellmanSurface& s, Point2 p) { return s.eval(p); }

}  // namespace bellsq
