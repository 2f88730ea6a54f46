#include "bellsq/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace bellsq {

namespace {

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

State3 draw_parent(Rng& rng, const SplitSamplerConfig& cfg) {
  const double x = uniform(rng, cfg.x_min, cfg.x_max);
  const double z = cfg.root_z_zero ? 0.0 : uniform(rng, 0.0, cfg.z_max);
  const double gap = uniform(rng, 0.0, 1.0 - z * z);
  return {x, x * x + gap, z};
}

std::vector<double> draw_weights(Rng& rng, int n) {
  // Uniform on the simplex.
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(n);
  double sum = 0.0;
  for (auto& v : w) sum += (v = e(rng));
  for (auto& v : w) v /= sum;
  return w;
}

int draw_children(Rng& rng, int max_children) {
  return std::uniform_int_distribution<int>(2, std::max(2, max_children))(rng);
}

}  // namespace

std::optional<SplitEvent> sample_split_of(Rng& rng, const State3& p, int n) {
  const double r = std::sqrt(std::max(0.0, 1.0 - p.z * p.z));
  if (!(r > 0.0)) return std::nullopt;
  const auto w = draw_weights(rng, n);
  std::vector<double> d(n);
  double shift = 0.0;
  for (int j = 0; j < n; ++j) {
    d[j] = uniform(rng, -r, r);
    shift += w[j] * d[j];
  }
  for (auto& v : d) {
    v -= shift;
    if (std::abs(v) > r) return std::nullopt;
  }
  std::vector<double> lower(n);
  std::vector<double> upper(n);
  double wl = 0.0;
  double wu = 0.0;
  for (int j = 0; j < n; ++j) {
    const double xj = p.x + d[j];
    lower[j] = xj * xj;
    upper[j] = std::max(lower[j], 1.0 - p.z * p.z + p.x * p.x + 2.0 * p.x * d[j]);
    wl += w[j] * lower[j];
    wu += w[j] * upper[j];
  }
  if (wl > p.y || wu < p.y) return std::nullopt;
  const double need = p.y - wl;
  std::vector<double> theta(n);
  double spread = 0.0;
  for (int j = 0; j < n; ++j) {
    theta[j] = uniform(rng, 0.0, 1.0);
    spread += w[j] * theta[j] * (upper[j] - lower[j]);
  }
  const double scale = spread > 0.0 ? need / spread : 0.0;
  const bool fits = std::all_of(theta.begin(), theta.end(), [&](double t) { return t * scale <= 1.0; });
  const double common = wu > wl ? need / (wu - wl) : 0.0;
  SplitEvent e{p, {}};
  e.children.reserve(n);
  for (int j = 0; j < n; ++j) {
    const double th = fits ? theta[j] * scale : common;
    const double xj = p.x + d[j];
    const double yj = lower[j] + th * (upper[j] - lower[j]);
    e.children.push_back({w[j], {xj, yj, std::sqrt(p.z * p.z + d[j] * d[j])}});
  }
  return e;
}

std::optional<SplitEvent> sample_split(Rng& rng, const SplitSamplerConfig& cfg) {
  const State3 p = draw_parent(rng, cfg);
  return sample_split_of(rng, p, draw_children(rng, cfg.max_children));
}

std::optional<SplitEvent> sample_roof_split(Rng& rng, const SplitSamplerConfig& cfg) {
  const double x = uniform(rng, cfg.x_min, cfg.x_max);
  const double c = std::sqrt(uniform(rng, 0.0, 1.0));
  if (!(c > 0.0)) return std::nullopt;
  const int n = draw_children(rng, cfg.max_children);
  const auto w = draw_weights(rng, n);
  std::vector<double> d(n);
  double shift = 0.0;
  for (int j = 0; j < n; ++j) {
    d[j] = uniform(rng, -c, c);
    shift += w[j] * d[j];
  }
  const double c2 = c * c;
  const State3 parent{x, x * x + c2, std::sqrt(std::max(0.0, 1.0 - c2))};
  SplitEvent e{parent, {}};
  for (int j = 0; j < n; ++j) {
    const double dj = d[j] - shift;
    if (std::abs(dj) > c) return std::nullopt;
    const double xj = x + dj;
    const double gap = std::max(0.0, c2 - dj * dj);
    e.children.push_back({w[j], {xj, xj * xj + gap, std::sqrt(std::max(0.0, 1.0 - gap))}});
  }
  return e;
}

MartingaleTree random_tree(Rng& rng, double x_range, std::size_t max_nodes, double branching) {
  const double x = uniform(rng, -x_range, x_range);
  const double gap = uniform(rng, 0.0, 1.0);
  MartingaleTree tree({x, x * x + gap, 0.0});
  std::vector<std::size_t> open{0};
  std::bernoulli_distribution grow(branching);
  while (!open.empty()) {
    const std::size_t i = open.back();
    open.pop_back();
    const State3 s = tree.node(i).state;
    if (s.y - s.x * s.x <= 0.0) continue;
    std::optional<SplitEvent> e;
    if (tree.size() + 5 < max_nodes && grow(rng)) {
      for (int attempt = 0; attempt < 20 && !e; ++attempt) {
        e = sample_split_of(rng, s, std::uniform_int_distribution<int>(2, 4)(rng));
      }
    }
    if (e) {
      for (const auto& c : e->children) open.push_back(tree.add_child(i, c.weight, c.state));
    } else {
      tree.add_symmetric_split(i);
    }
  }
  return tree;
}

}  // namespace bellsq
