#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "bellsq/report.hpp"

namespace bellsq {

// Shape of f'' that selects the foliation of b_eps.
enum class Shape {
  D2_NONINCREASING,  // right tangents
  D2_NONDECREASING,  // left tangents
  SINGLE_CUP,        // f'' rises up to the vertex and falls after it
  INDICATOR,         // closed-form surface only
};

enum class PayoffKind { Exp, Power, Indicator, Custom };

const char* to_string(Shape s);

class BoundaryFunction {
 public:
  using Fn = std::function<double(double)>;

  struct Spec {
    std::string name;
    Fn f;
    Fn d1;  // may be empty
    Fn d2;  // may be empty
    Shape shape = Shape::D2_NONDECREASING;
    double vertex = 0.0;
    // Declared, not verified: exponential rates with f(t) = O(e^{rate |t|})
    // as t -> +inf (right) and t -> -inf (left).
    double growth_right = 0.0;
    double growth_left = 0.0;
    double growth_bound = std::numeric_limits<double>::infinity();
    // f(c + s) = f(c - s); the cup is then made of horizontal chords.
    bool symmetric_about_vertex = false;
    PayoffKind kind = PayoffKind::Custom;
    double param = 0.0;
  };

  explicit BoundaryFunction(Spec spec);

  double eval(double t) const { return spec_.f(t); }
  double operator()(double t) const { return spec_.f(t); }
  // Throw DomainError when the derivative is not available.
  double d1(double t) const;
  double d2(double t) const;
  bool has_derivatives() const { return spec_.d1 && spec_.d2; }

  Shape shape() const { return spec_.shape; }
  double vertex() const { return spec_.vertex; }
  double growth_right() const { return spec_.growth_right; }
  double growth_left() const { return spec_.growth_left; }
  double growth_bound() const { return spec_.growth_bound; }
  bool symmetric_about_vertex() const { return spec_.symmetric_about_vertex; }
  PayoffKind kind() const { return spec_.kind; }
  // lambda for exp payoffs, p for power payoffs.
  double param() const { return spec_.param; }
  const std::string& name() const { return spec_.name; }

 private:
  Spec spec_;
};

// f(t) = e^{lambda t}.
BoundaryFunction exp_payoff(double lambda);
// f(t) = |t|^p with p in [1, 2].
BoundaryFunction power_payoff(double p);
// f = indicator of [0, inf).
BoundaryFunction indicator_payoff();

// "indicator", "exp:<lambda>", "power:<p>".
BoundaryFunction make_payoff(const std::string& spec);

// Worst violation of the declared monotonicity of f'' between consecutive
// grid points, relative to the largest |f''| seen. Grid points equal to the
// vertex of a SINGLE_CUP payoff are skipped.
VerificationReport check_shape(const BoundaryFunction& f, std::vector<double> grid,
                               double tolerance = 1e-12);

}  // namespace bellsq
