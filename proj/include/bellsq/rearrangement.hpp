#pragma once

#include "bellsq/martingale_tree.hpp"
#include "bellsq/parallel.hpp"

namespace bellsq {

// Atoms sorted by non-increasing value; laid end to end they give the
// non-increasing rearrangement on [0, 1).
DistributionTable rearrangement(const MartingaleTree& t);
DistributionTable rearrangement(DistributionTable d);

// Lower estimate of the L2-based BMO seminorm of the rearrangement on [0, 1):
// the largest root-mean-square oscillation over subintervals whose endpoints
// are atom breakpoints or multiples of 1/grid.
double bmo_norm_estimate(const DistributionTable& d, int grid = 512,
                         ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace bellsq
