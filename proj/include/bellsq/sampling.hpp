#pragma once

#include <optional>
#include <random>

#include "bellsq/geometry.hpp"
#include "bellsq/martingale_tree.hpp"

namespace bellsq {

using Rng = std::mt19937_64;

// Parents are drawn uniformly: x in [x_min, x_max], z in [0, z_max), and
// y - x^2 uniform in [0, 1 - z^2]. Events have 2 to max_children children.
struct SplitSamplerConfig {
  double x_min = -2.0;
  double x_max = 2.0;
  double z_max = 1.0;
  bool root_z_zero = false;  // every parent at z = 0
  int max_children = 5;
};

// Random admissible split of `parent` into n children, or nullopt when the
// draw is rejected. Offsets are uniform in [-r, r], r = sqrt(1 - z^2),
// re-centred to the parent mean; second moments are spread between each
// child's lower boundary and its Omega ceiling.
std::optional<SplitEvent> sample_split_of(Rng& rng, const State3& parent, int n);

// Draws a parent per the config, then tries sample_split_of.
std::optional<SplitEvent> sample_split(Rng& rng, const SplitSamplerConfig& cfg);

// Split of a roof state: children on the line through (x, y) with slope 2x,
// at offsets within [-c, c], c = sqrt(y - x^2). All states are on the roof.
std::optional<SplitEvent> sample_roof_split(Rng& rng, const SplitSamplerConfig& cfg);

// Random tree from a root at z = 0: each node is split by sample_split_of with
// probability `branching` while the node budget lasts; remaining nodes are
// closed by a symmetric split onto the lower boundary.
MartingaleTree random_tree(Rng& rng, double x_range = 1.0, std::size_t max_nodes = 200,
                           double branching = 0.6);

}  // namespace bellsq
