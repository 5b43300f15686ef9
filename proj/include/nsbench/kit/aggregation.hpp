#pragma once

#include <array>
#include <functional>

#include "nsbench/kit/min_norm.hpp"

namespace nsbench::kit {

// Aggregate subgradient and its locality measure.
struct AggregatePair {
  Vector xi;
  double beta = 0.0;
};

struct WeightedSubgradient {
  Vector xi;
  double beta = 0.0;
};

struct AggregateResult {
  AggregatePair pair;
  SimplexWeights lambda;
  double phi = 0.0;
};

using MetricMap = std::function<Vector(const Vector&)>;

// Minimizes phi(l) = (sum l_i xi_i)' D (sum l_i xi_i) + 2 sum l_i beta_i over the
// 2-simplex by enumerating vertices, edge minimizers and the interior
// stationary point.
AggregateResult aggregate_three(const std::array<WeightedSubgradient, 3>& pairs, const MetricMap& metric);

// max(|f(x) - f(y) - xi'(x - y)|, gamma * ||x - y||^2).
double locality_measure(double f_x, double f_y, const Vector& xi, const Vector& x, const Vector& y, double gamma);

}  // namespace nsbench::kit
