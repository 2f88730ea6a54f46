#include "bellsq/bmo_bellman.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include <gtest/gtest.h>

#include "bellsq/errors.hpp"
#include "test_support.hpp"

namespace bellsq {
namespace {

using testing::make_rng;
using testing::uniform;

double plain_bisect(const std::function<double(double)>& g, double lo, double hi) {
  double glo = g(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

BoundaryFunction constant_payoff(double c) {
  BoundaryFunction::Spec s;
  s.name = "const";
  s.f = [c](double) { return c; };
  s.d1 = [](double) { return 0.0; };
  s.d2 = [](double) { return 0.0; };
  s.shape = Shape::D2_NONINCREASING;
  return BoundaryFunction(s);
}

// 2 - t: non-negative on the range the tests use.
BoundaryFunction affine_payoff() {
  BoundaryFunction::Spec s;
  s.name = "affine";
  s.f = [](double t) { return 2.0 - t; };
  s.d1 = [](double) { return -1.0; };
  s.d2 = [](double) { return 0.0; };
  s.shape = Shape::D2_NONINCREASING;
  s.growth_left = 0.0;
  return BoundaryFunction(s);
}

TEST(Slopes, Examples) {
  EXPECT_NEAR(slope_mR(0.3, 0.5, constant_payoff(3.0)), 0.0, 1e-10);
  EXPECT_NEAR(slope_mR(0.0, 0.5, exp_payoff(-1.0)), -2.0, 1e-9);
  EXPECT_NEAR(slope_mR(0.7, 0.5, affine_payoff()), -1.0, 1e-9);
  EXPECT_NEAR(slope_mL(0.0, 0.5, exp_payoff(1.0)), 2.0, 1e-9);
  EXPECT_NEAR(exp_slope_mL(0.0, 0.5, 1.0), 2.0, 1e-15);
  EXPECT_NEAR(exp_slope_mR(0.0, 0.5, -1.0), -2.0, 1e-15);
}

TEST(Slopes, DivergentGrowthIsReported) {
  EXPECT_THROW(slope_mL(0.0, 1.0, exp_payoff(1.0)), DivergenceError);
  EXPECT_THROW(exp_slope_mL(0.0, 1.0, 1.0), DivergenceError);
  EXPECT_THROW(BellmanSurface(exp_payoff(1.0), 1.0), DivergenceError);
  EXPECT_THROW(BellmanSurface(exp_payoff(2.0), 0.6), DivergenceError);
  EXPECT_NO_THROW(BellmanSurface(exp_payoff(1.0), 0.99));
}

TEST(Slopes, ClosedFormMatchesQuadrature) {
  for (double lambda : {-2.0, -0.5, 0.3, 1.0, 1.9}) {
    for (double eps : {0.1, 0.25, 0.5}) {
      for (double u : {-2.0, 0.0, 1.5}) {
        const BoundaryFunction f = exp_payoff(lambda);
        if (lambda * eps < 1.0) {
          const double want = exp_slope_mL(u, eps, lambda);
          EXPECT_NEAR(slope_mL(u, eps, f), want, 1e-8 * std::max(1.0, std::abs(want)));
        }
        if (-lambda * eps < 1.0) {
          const double want = exp_slope_mR(u, eps, lambda);
          EXPECT_NEAR(slope_mR(u, eps, f), want, 1e-8 * std::max(1.0, std::abs(want)));
        }
      }
    }
  }
}

TEST(Slopes, SatisfyTheTangentOdes) {
  // m_L - eps m_L' = f' and m_R + eps m_R' = f', by central differences.
  const double eps = 0.4;
  const double h = 1e-4;
  for (const BoundaryFunction& f : {exp_payoff(0.8), exp_payoff(-1.5)}) {
    for (double u : {-1.0, 0.2, 0.9}) {
      if (f.shape() == Shape::D2_NONDECREASING) {
        const double d = (slope_mL(u + h, eps, f) - slope_mL(u - h, eps, f)) / (2 * h);
        EXPECT_NEAR(slope_mL(u, eps, f) - eps * d, f.d1(u), 1e-6);
      } else {
        const double d = (slope_mR(u + h, eps, f) - slope_mR(u - h, eps, f)) / (2 * h);
        EXPECT_NEAR(slope_mR(u, eps, f) + eps * d, f.d1(u), 1e-6);
      }
    }
  }
}

TEST(SolveCup, SymmetricPower) {
  const CupChord ch = solve_cup(0.8, power_payoff(1.5));
  EXPECT_DOUBLE_EQ(ch.a, -0.4);
  EXPECT_DOUBLE_EQ(ch.b, 0.4);
  const CupChord zero = solve_cup(0.0, power_payoff(1.5));
  EXPECT_EQ(zero.a, 0.0);
  EXPECT_EQ(zero.b, 0.0);
}

TEST(SolveCup, AsymmetricQuartic) {
  // For a quartic, the cup equation reduces to f'''((a+b)/2) = 0.
  const BoundaryFunction f = testing::quartic_payoff();
  for (double l : {0.01, 0.05, 0.1, 0.2}) {
    const CupChord ch = solve_cup(l, f);
    EXPECT_NEAR(ch.b - ch.a, l, 1e-15);
    EXPECT_LE(std::abs(cup_residual(f, ch.a, ch.b)), 1e-12);
    EXPECT_NEAR(ch.a, -0.025 - l / 2, 1e-10);
  }
}

TEST(SolveCup, SoftAbsAgainstIndependentBisection) {
  const BoundaryFunction f = testing::soft_abs_payoff();
  double prev_a = 0.0;
  double prev_b = 0.0;
  for (double l = 0.05; l <= 2.0 + 1e-12; l += 0.05) {
    const CupChord ch = solve_cup(l, f);
    EXPECT_NEAR(ch.b - ch.a, l, 1e-14);
    EXPECT_LE(ch.a, 0.0);
    EXPECT_GE(ch.b, 0.0);
    EXPECT_LE(std::abs(cup_residual(f, ch.a, ch.b)), 1e-12);
    const double oracle = plain_bisect(
        [&](double a) {
          const double b = a + l;
          return 0.5 * (std::atan(a) + 0.5 * std::atan(2 * b)) - (f(b) - f(a)) / l;
        },
        -l, 0.0);
    EXPECT_NEAR(ch.a, oracle, 1e-10);
    EXPECT_LT(ch.a, prev_a);
    EXPECT_GT(ch.b, prev_b);
    prev_a = ch.a;
    prev_b = ch.b;
  }
}

TEST(SolveCup, ShrinksToTheVertex) {
  const BoundaryFunction f = testing::soft_abs_payoff();
  const CupChord ch = solve_cup(1e-6, f);
  EXPECT_NEAR(ch.a, 0.0, 1e-6);
  EXPECT_NEAR(ch.b, 0.0, 1e-6);
}

TEST(SolveCup, RejectsNonCupPayoffs) {
  EXPECT_THROW(solve_cup(0.5, exp_payoff(1.0)), DomainError);
  EXPECT_THROW(solve_cup(-0.5, power_payoff(1.5)), DomainError);
}

TEST(IndicatorDomains, Classification) {
  const double eps = 0.5;
  EXPECT_EQ(classify_indicator_domain({eps, 2 * eps * eps}, eps), IndicatorDomain::D1);
  EXPECT_EQ(classify_indicator_domain({0.0, eps * eps}, eps), IndicatorDomain::D2);
  EXPECT_EQ(classify_indicator_domain({-0.75, 0.7}, eps), IndicatorDomain::D3);
  EXPECT_EQ(classify_indicator_domain({-1.0, 1.2}, eps), IndicatorDomain::D4);
  // Corner shared by D2 and D3: the tie goes to D2, and both formulas give 1/2.
  EXPECT_EQ(classify_indicator_domain({-eps, 2 * eps * eps}, eps), IndicatorDomain::D2);
  EXPECT_NEAR(indicator_bellman({-eps, 2 * eps * eps}, eps), 0.5, 1e-15);
  EXPECT_THROW(classify_indicator_domain({0.0, 2 * eps * eps}, eps), DomainError);
}

TEST(BellmanSurface, IndicatorExamples) {
  const BellmanSurface b(indicator_payoff(), 1.0);
  EXPECT_EQ(b.foliation(), Foliation::IndicatorClosedForm);
  EXPECT_NEAR(b.eval({-1.0, 2.0}), 0.5, 1e-15);
  EXPECT_NEAR(b.eval({0.0, 1.0}), 7.0 / 8.0, 1e-15);
  EXPECT_NEAR(b.eval({0.5, 0.25}), 1.0, 1e-15);
  EXPECT_NEAR(b.eval({-0.5, 0.25}), 0.0, 1e-15);
}

TEST(BellmanSurface, ExpExample) {
  for (double eps : {0.1, 0.5, 0.9}) {
    const BellmanSurface b(exp_payoff(1.0), eps);
    const double want = std::exp(-eps) / (1.0 - eps);
    EXPECT_NEAR(b.eval({0.0, eps * eps}), want, 1e-12 * want);
    const BellmanSurface q(exp_payoff(1.0), eps, SlopeSource::Quadrature);
    EXPECT_NEAR(q.eval({0.0, eps * eps}), want, 1e-8 * want);
  }
}

TEST(BellmanSurface, PowerOnTheAxis) {
  for (double p : {1.0, 1.3, 1.5, 2.0}) {
    const BellmanSurface b(power_payoff(p), 1.0);
    EXPECT_EQ(b.foliation(), Foliation::Cup);
    for (double y : {0.01, 0.25, 0.7, 1.0}) {
      EXPECT_NEAR(b.eval({0.0, y}), std::pow(y, p / 2), 1e-12) << p << " " << y;
    }
  }
}

TEST(BellmanSurface, SquarePayoffIsTheSecondMoment) {
  const BellmanSurface b(power_payoff(2.0), 0.7);
  auto rng = make_rng(3);
  for (int i = 0; i < 2000; ++i) {
    const Point2 p = testing::random_strip_point(rng, 0.7, -3.0, 3.0);
    EXPECT_NEAR(b.eval(p), p.y, 1e-9 * std::max(1.0, p.y));
  }
}

TEST(BellmanSurface, FoliationFollowsShape) {
  EXPECT_EQ(BellmanSurface(exp_payoff(1.0), 0.5).foliation(), Foliation::LeftTangents);
  EXPECT_EQ(BellmanSurface(exp_payoff(-1.0), 0.5).foliation(), Foliation::RightTangents);
  EXPECT_EQ(BellmanSurface(testing::soft_abs_payoff(), 0.5).foliation(), Foliation::Cup);
}

TEST(BellmanSurface, AffinePayoffIsReproduced) {
  const BellmanSurface b(affine_payoff(), 0.5);
  EXPECT_NEAR(b.eval({0.3, 0.09 + 0.2}), 1.7, 1e-9);
}

TEST(BellmanSurface, RejectsPointsOutsideTheStrip) {
  const BellmanSurface b(exp_payoff(1.0), 0.5);
  EXPECT_THROW(b.eval({0.0, 0.3}), DomainError);
  EXPECT_THROW(b.eval({0.0, -0.1}), DomainError);
}

std::vector<BellmanSurface> property_surfaces(double eps) {
  std::vector<BellmanSurface> out;
  out.emplace_back(indicator_payoff(), eps);
  out.emplace_back(exp_payoff(1.0), eps);
  out.emplace_back(exp_payoff(-1.0), eps);
  out.emplace_back(power_payoff(1.5), eps);
  out.emplace_back(testing::soft_abs_payoff(), eps);
  return out;
}

TEST(BellmanSurfaceProperty, BoundaryCondition) {
  auto rng = make_rng(11);
  for (const BellmanSurface& b : property_surfaces(0.6)) {
    for (int i = 0; i < 1000; ++i) {
      const double x = uniform(rng, -3.0, 3.0);
      EXPECT_NEAR(b.eval({x, x * x}), b.payoff()(x), 1e-10) << b.payoff().name() << " " << x;
    }
  }
}

TEST(BellmanSurfaceProperty, MonotoneInEps) {
  auto rng = make_rng(12);
  const std::vector<double> widths{0.2, 0.45, 0.7, 0.95};
  std::vector<std::vector<BellmanSurface>> by_eps;
  for (double e : widths) by_eps.push_back(property_surfaces(e));
  for (int i = 0; i < 2000; ++i) {
    const Point2 p = testing::random_strip_point(rng, widths[0], -2.0, 2.0);
    for (std::size_t k = 0; k < by_eps[0].size(); ++k) {
      double prev = by_eps[0][k].eval(p);
      for (std::size_t j = 1; j < widths.size(); ++j) {
        const double v = by_eps[j][k].eval(p);
        EXPECT_GE(v, prev - 1e-10 * std::max(1.0, std::abs(v))) << by_eps[j][k].payoff().name();
        prev = v;
      }
    }
  }
}

void check_local_concavity(const BellmanSurface& b, int samples, unsigned long long seed) {
  auto rng = make_rng(seed);
  const double eps = b.eps();
  int checked = 0;
  double worst = -INFINITY;
  while (checked < samples) {
    const Point2 p = testing::random_strip_point(rng, eps, -2.5, 2.5);
    const double dx = uniform(rng, -eps, eps);
    const double x2 = p.x + dx;
    const Point2 q{x2, x2 * x2 + eps * eps * uniform(rng, 0.0, 1.0)};
    if (testing::max_gap_on_segment(p, q) > eps * eps) continue;
    const double w = uniform(rng, 0.0, 1.0);
    const Point2 mid{w * p.x + (1 - w) * q.x, w * p.y + (1 - w) * q.y};
    const double lhs = w * b.eval(p) + (1 - w) * b.eval(q);
    const double rhs = b.eval(mid);
    const double scale = std::max(1.0, std::abs(rhs));
    worst = std::max(worst, (lhs - rhs) / scale);
    ++checked;
  }
  EXPECT_LE(worst, 1e-9) << b.payoff().name();
}

TEST(BellmanSurfaceProperty, LocallyConcaveOnCatalogPayoffs) {
  check_local_concavity(BellmanSurface(indicator_payoff(), 0.7), 100000, 21);
  check_local_concavity(BellmanSurface(exp_payoff(1.0), 0.7), 100000, 22);
  check_local_concavity(BellmanSurface(exp_payoff(-1.2), 0.5), 100000, 23);
  check_local_concavity(BellmanSurface(power_payoff(1.5), 0.7), 100000, 24);
}

TEST(BellmanSurfaceProperty, LocallyConcaveOnCustomCup) {
  check_local_concavity(BellmanSurface(testing::soft_abs_payoff(), 0.7), 20000, 25);
}

TEST(BellmanSurfaceProperty, ClosedFormAndQuadratureSurfacesAgree) {
  auto rng = make_rng(31);
  for (double lambda : {1.0, -1.0}) {
    const BellmanSurface a(exp_payoff(lambda), 0.5);
    const BellmanSurface q(exp_payoff(lambda), 0.5, SlopeSource::Quadrature);
    for (int i = 0; i < 500; ++i) {
      const Point2 p = testing::random_strip_point(rng, 0.5, -2.0, 2.0);
      const double v = a.eval(p);
      EXPECT_NEAR(q.eval(p), v, 1e-8 * std::max(1.0, v));
    }
  }
}

TEST(CupBoundary, WidestChordMatchesTangentBranches) {
  // Points on the widest chord are reached by the tangent branches (u_L = a2
  // on the left half, u_R = b2 on the right half) and must lie on the chord.
  for (double eps : {0.3, 0.7}) {
    for (const BoundaryFunction& f : {power_payoff(1.5), testing::soft_abs_payoff()}) {
      const BellmanSurface b(f, eps);
      const double a = b.cup()->a2eps();
      const double c = b.cup()->b2eps();
      for (double w : {0.05, 0.25, 0.5, 0.75, 0.95}) {
        const Point2 p{w * a + (1 - w) * c, w * a * a + (1 - w) * c * c};
        const double want = w * f(a) + (1 - w) * f(c);
        EXPECT_NEAR(b.eval(p), want, 1e-10) << f.name() << " " << eps << " " << w;
      }
    }
  }
}

TEST(CupBoundary, ContinuousAcrossBranches) {
  const double eps = 0.7;
  for (const BoundaryFunction& f : {power_payoff(1.5), testing::soft_abs_payoff()}) {
    const BellmanSurface b(f, eps);
    const double a = b.cup()->a2eps();
    const double c = b.cup()->b2eps();
    const double mid_x = 0.5 * (a + c);
    const double mid_y = 0.5 * (a * a + c * c);
    for (double dy : {-1e-7, 1e-7}) {
      // Crossing the chord vertically at a few abscissas.
      for (double w : {0.2, 0.5, 0.8}) {
        const double x = w * a + (1 - w) * c;
        const double y = w * a * a + (1 - w) * c * c;
        const Point2 p{x, y + dy};
        if (!in_omega_eps(p, eps)) continue;
        EXPECT_NEAR(b.eval(p), b.eval({x, y}), 1e-6) << f.name();
      }
    }
    EXPECT_GT(mid_y - mid_x * mid_x, 0.0);
  }
}

TEST(IndicatorSurface, ContinuousAcrossInterfaces) {
  const double eps = 1.0;
  const double delta = 1e-11;
  std::vector<Point2> interface_points;
  for (double x = 0.01; x < eps; x += 0.01) interface_points.push_back({x, 2 * eps * x});     // D1|D2
  for (double x = -0.99; x < 0.0; x += 0.01) interface_points.push_back({x, -2 * eps * x});  // D2|D3
  for (double x = -3.0; x < -1.0; x += 0.01) interface_points.push_back({x, -2 * eps * x});  // D3|D4
  for (const Point2& p : interface_points) {
    const Point2 above{p.x, p.y + delta};
    const Point2 below{p.x, p.y - delta};
    if (!in_omega_eps(above, eps) || !in_omega_eps(below, eps)) continue;
    EXPECT_NE(classify_indicator_domain(above, eps), classify_indicator_domain(below, eps))
        << p.x;
    EXPECT_NEAR(indicator_bellman(above, eps), indicator_bellman(below, eps), 1e-9) << p.x;
  }
}

TEST(IndicatorSurface, BoundedBetweenZeroAndOne) {
  auto rng = make_rng(41);
  for (int i = 0; i < 10000; ++i) {
    const Point2 p = testing::random_strip_point(rng, 1.0, -5.0, 5.0);
    const double v = indicator_bellman(p, 1.0);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

}  // namespace
}  // namespace bellsq
