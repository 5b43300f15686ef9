#pragma once

#include <span>
#include <vector>

#include "nsbench/types.hpp"

namespace nsbench::kit {

// Convex-combination multipliers: nonnegative, summing to one.
struct SimplexWeights {
  Vector weights;

  bool valid(double tol = 1e-10) const;
};

struct MinNormPoint {
  SimplexWeights lambda;
  Vector point;
};

// Minimum-norm element of conv(points), by Wolfe's algorithm. Weights are
// indexed like the input; the returned point is sum_i lambda_i * points_i.
MinNormPoint min_norm_convex_hull(std::span<const Vector> points);

}  // namespace nsbench::kit
