#include "bellsq/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bellsq/errors.hpp"

namespace bellsq {

DistributionTable rearrangement(const MartingaleTree& t) { return rearrangement(terminal_distribution(t)); }

DistributionTable rearrangement(DistributionTable d) {
  std::stable_sort(d.atoms.begin(), d.atoms.end(),
                   [](const Atom& a, const Atom& b) { return a.value > b.value; });
  return d;
}

double bmo_norm_estimate(const DistributionTable& table, int grid, ExecPolicy policy) {
  if (grid < 1) throw DomainError("bmo_norm_estimate: grid must be positive");
  const DistributionTable d = rearrangement(table);
  if (d.atoms.empty()) return 0.0;

  double total = 0.0;
  double mean = 0.0;
  for (const auto& a : d.atoms) {
    total += a.mass;
    mean += a.mass * a.value;
  }
  mean /= total;

  // Breakpoints of the step function, scaled to [0, 1].
  std::vector<double> breaks{0.0};
  for (const auto& a : d.atoms) breaks.push_back(breaks.back() + a.mass / total);
  breaks.back() = 1.0;

  std::vector<double> pts(breaks);
  for (int k = 1; k < grid; ++k) pts.push_back(static_cast<double>(k) / grid);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  // Prefix integrals of (phi - mean) and (phi - mean)^2. Every breakpoint is a
  // candidate, so phi is constant between consecutive candidates.
  const std::size_t n = pts.size();
  std::vector<double> f1(n, 0.0);
  std::vector<double> f2(n, 0.0);
  std::size_t atom = 0;
  for (std::size_t i = 1; i < n; ++i) {
    while (atom + 1 < d.atoms.size() && breaks[atom + 1] <= pts[i - 1]) ++atom;
    const double len = pts[i] - pts[i - 1];
    const double v = d.atoms[atom].value - mean;
    f1[i] = f1[i - 1] + len * v;
    f2[i] = f2[i - 1] + len * v * v;
  }

  auto row_max = [&](std::size_t i) {
    double best = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double len = pts[j] - pts[i];
      const double m1 = (f1[j] - f1[i]) / len;
      const double var = (f2[j] - f2[i]) / len - m1 * m1;
      best = std::max(best, var);
    }
    return best;
  };

  double best = 0.0;
  const auto rows = static_cast<long long>(n);
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(dynamic, 16) reduction(max : best)
    for (long long i = 0; i < rows; ++i) best = std::max(best, row_max(static_cast<std::size_t>(i)));
  } else {
    for (long long i = 0; i < rows; ++i) best = std::max(best, row_max(static_cast<std::size_t>(i)));
  }
  return std::sqrt(std::max(0.0, best));
}

}  // namespace bellsq
