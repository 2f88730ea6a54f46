#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "bellsq/geometry.hpp"
#include "bellsq/parallel.hpp"
#include "bellsq/report.hpp"
#include "bellsq/sampling.hpp"

namespace bellsq {

// Main-inequality checks record violation = sum_j w_j G(child_j) - G(parent);
// a suite passes when the worst violation is at most the tolerance.
using Evaluator3 = std::function<double(const State3&)>;

enum class EventFamily {
  Omega,  // admissible splits anywhere in Omega
  Roof,   // splits of roof states along their tangent line
};

struct SuiteConfig {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  ExecPolicy policy = ExecPolicy::Parallel;
  SplitSamplerConfig sampler;
};

VerificationReport verify_supersolution(const std::string& suite, const Evaluator3& G,
                                        EventFamily family, const SuiteConfig& cfg);

// Ready-made evaluators and suites.
// (x, y, z) -> b_{sqrt(1 - z^2)}(x, y) for f = e^{lambda t}, lambda < 1.
Evaluator3 exp_composite(double lambda);
// (x, y, z) -> indicator b_1(x, y); meaningful for parents at z = 0.
Evaluator3 indicator_b1();
// (x, y, z) -> roof_B(x, y).
Evaluator3 roof_glued();

VerificationReport verify_indicator_b1(SuiteConfig cfg);
VerificationReport verify_exp_composite(double lambda, SuiteConfig cfg);
VerificationReport verify_roof_glued(SuiteConfig cfg);
// b_1 + 0.05 x^2 fails the main inequality; this suite is expected to fail.
VerificationReport verify_perturbed_control(SuiteConfig cfg);

// roof_B(xbar, ybar) <= tangent plane of the model solution at (x0, y0), for
// (x0, y0) in omega_smile and (xbar, ybar) on the slope-2x0 line in omega_1.
VerificationReport verify_roof_tangent_condition(const SuiteConfig& cfg);

// Finite-difference dG/dc >= -tol for G_right (side Right) or G_left.
VerificationReport verify_monotone_c(TangentSide side, const SuiteConfig& cfg);

// F(alpha, gamma) <= tol on a grid x grid mesh of 0 <= alpha <= gamma <= pi/2.
VerificationReport verify_f_kernel(int grid = 400, double tolerance = 1e-12);
// Second differences of F in alpha along each gamma slice >= -tol.
VerificationReport verify_f_kernel_convexity(int grid = 400, double tolerance = 1e-9);

// |2 t v'(t) + v - sqrt(2 - v^2)| with v' from finite differences of v_of_t.
VerificationReport verify_ode_residual(std::size_t samples = 1000, std::uint64_t seed = 0,
                                       double tolerance = 1e-8);
// |Psi(v) - (1 - 1/(2 t(v)))| on random v in [-1, 1).
VerificationReport verify_psi_t_identity(std::size_t samples = 1000, std::uint64_t seed = 0,
                                         double tolerance = 1e-12);

// Random trees with root z = 0: BMO estimate of the rearrangement minus 1.
// Passes when every tree is within tolerance and the +-1 witness reaches
// 1 - 1e-6.
VerificationReport verify_embedding(std::size_t trees = 100, std::uint64_t seed = 0,
                                    double tolerance = 1e-3, ExecPolicy policy = ExecPolicy::Parallel);

// P(phi_inf >= 0) for extremizers started at (-lambda, lambda^2 + 1, 0),
// lambda in {0.5, 1, 2, 3}, against (e/2) e^{-lambda}; violation is the
// excess over the bound. Also fails when the lambda = 1 tree misses the
// bound by more than 2%.
VerificationReport verify_weak_jn_c1(int steps = 4000);

}  // namespace bellsq
