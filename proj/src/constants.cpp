#include "bellsq/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "bellsq/boundary_functions.hpp"
#include "bellsq/errors.hpp"

namespace bellsq {

namespace {

constexpr double kTieRel = 1e-12;

// Maximizes g on [0, 1]: grid, then Brent on the two cells around the best node.
ConstantResult maximize_unit(const std::function<double(double)>& g, int grid) {
  if (grid < 2) throw DomainError("grid must have at least 2 points");
  int best = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double v = g(static_cast<double>(i) / (grid - 1));
    if (v >= best_v) {
      best_v = v;
      best = i;
    }
  }
  double arg = static_cast<double>(best) / (grid - 1);
  const double lo = std::max(0.0, static_cast<double>(best - 1) / (grid - 1));
  const double hi = std::min(1.0, static_cast<double>(best + 1) / (grid - 1));
  const auto [y, neg] =
      boost::math::tools::brent_find_minima([&](double t) { return -g(t); }, lo, hi, 52);
  if (-neg > best_v) {
    best_v = -neg;
    arg = y;
  }
  return {best_v, {0.0, arg}};
}

struct Candidate {
  double s = -std::numeric_limits<double>::infinity();
  double x = 0.0;
  double q = 0.0;
};

bool better(const Candidate& a, const Candidate& b) {
  if (!std::isfinite(a.s) || !std::isfinite(b.s)) return a.s != b.s ? a.s > b.s : a.x > b.x;
  if (a.s > b.s + kTieRel * std::abs(b.s)) return true;
  if (a.s < b.s - kTieRel * std::abs(b.s)) return false;
  return a.x > b.x;
}

}  // namespace

ConstantResult sharp_constant_cp(double p, int grid) {
  const BellmanSurface b(power_payoff(p), 1.0);
  auto g = [&](double y) { return std::pow(b.eval({0.0, y}), 1.0 / p); };
  return maximize_unit(g, grid);
}

ConstantResult sharp_constant_exp(double eps, int grid) {
  if (!(eps > 0.0 && eps < 1.0)) {
    std::ostringstream msg;
    msg << "sharp_constant_exp: eps = " << eps << " must be in (0, 1)";
    throw DivergenceError(msg.str());
  }
  const BellmanSurface b(exp_payoff(eps), 1.0, SlopeSource::Quadrature);
  return maximize_unit([&](double y) { return b.eval({0.0, y}); }, grid);
}

ConstantResult sharp_constant_tail(int grid, std::optional<IndicatorDomain> region, ExecPolicy policy) {
  if (grid < 3) throw DomainError("sharp_constant_tail: grid must have at least 3 points");
  const double x_lo = -2.0;
  const double x_hi = 2.0;
  auto s = [&](double x, double q) {
    const Point2 p{x, x * x + q};
    if (region && classify_indicator_domain(p, 1.0) != *region) {
      return -std::numeric_limits<double>::infinity();
    }
    return std::exp(-x) * indicator_bellman(p, 1.0);
  };
  auto x_at = [&](int i) { return x_lo + (x_hi - x_lo) * i / (grid - 1); };
  auto q_at = [&](int j) { return static_cast<double>(j) / (grid - 1); };

  // One row per x node; rows are folded in order so both policies agree.
  std::vector<Candidate> rows(grid);
  auto scan_row = [&](std::size_t i) {
    Candidate best;
    const double x = x_at(static_cast<int>(i));
    for (int j = 0; j < grid; ++j) {
      const Candidate c{s(x, q_at(j)), x, q_at(j)};
      if (better(c, best)) best = c;
    }
    rows[i] = best;
  };
  for_each_chunk(static_cast<std::size_t>(grid), policy, scan_row);
  Candidate best;
  for (const auto& r : rows) {
    if (better(r, best)) best = r;
  }
  if (!std::isfinite(best.s)) throw DomainError("sharp_constant_tail: region has no grid points");

  // Coordinate-wise refinement within one grid cell of the incumbent.
  const double hx = (x_hi - x_lo) / (grid - 1);
  const double hq = 1.0 / (grid - 1);
  for (int sweep = 0; sweep < 4; ++sweep) {
    const double xa = std::max(x_lo, best.x - hx);
    const double xb = std::min(x_hi, best.x + hx);
    const double q = best.q;
    const auto [x, nx] = boost::math::tools::brent_find_minima([&](double t) { return -s(t, q); }, xa, xb, 52);
    if (better({-nx, x, q}, best) && -nx > best.s) best = {-nx, x, q};
    const double qa = std::max(0.0, best.q - hq);
    const double qb = std::min(1.0, best.q + hq);
    const double bx = best.x;
    const auto [qq, nq] = boost::math::tools::brent_find_minima([&](double t) { return -s(bx, t); }, qa, qb, 52);
    if (better({-nq, bx, qq}, best) && -nq > best.s) best = {-nq, bx, qq};
  }
  return {best.s, {best.x, best.x * best.x + best.q}};
}

}  // namespace bellsq
