#pragma once

#include <optional>

#include "bellsq/bmo_bellman.hpp"
#include "bellsq/geometry.hpp"
#include "bellsq/parallel.hpp"

namespace bellsq {

struct ConstantResult {
  double value = 0.0;
  Point2 argmax;
};

// sup over y in [0, 1] of b_1(0, y)^{1/p} for f = |t|^p, p in [1, 2].
ConstantResult sharp_constant_cp(double p, int grid = 201);

// sup over y in [0, 1] of b_1(0, y) for f = e^{eps t}, eps in (0, 1); slopes
// by quadrature.
ConstantResult sharp_constant_exp(double eps, int grid = 201);

// sup of e^{-x} b_1(x, y) for the indicator payoff over omega_1 with
// x in [-2, 2]. Grid over (x, y - x^2) then coordinate-wise refinement.
// Values within a relative 1e-12 of each other are ties and resolve to the
// larger x. `region` restricts the search to one indicator domain.
ConstantResult sharp_constant_tail(int grid = 2001, std::optional<IndicatorDomain> region = std::nullopt,
                                   ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace bellsq
