#pragma once

#include <functional>

namespace bellsq {

inline constexpr double kQuadTol = 1e-11;

// Integral of e^{-s/eps} g(s) over s in [0, inf), for g with |g(s)| = O(e^{rate s}).
// Adaptive Gauss-Kronrod on successive panels until the tail is negligible;
// g should be smooth on each panel.
// Throws DivergenceError when rate * eps >= 1 and QuadratureError when the
// panel budget or the error target is missed.
double exp_weighted_integral(const std::function<double(double)>& g, double eps, double rate,
                             double tol = kQuadTol);

// Integral of e^{-s/eps} g(s) over s in [0, length], length >= 0.
double exp_weighted_integral_finite(const std::function<double(double)>& g, double eps,
                                    double length, double tol = kQuadTol);

}  // namespace bellsq
