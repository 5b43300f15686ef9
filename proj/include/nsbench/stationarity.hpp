#pragma once

#include <vector>

#include "nsbench/objective.hpp"
#include "nsbench/piecewise.hpp"

namespace nsbench {

struct StationarityReport {
  // max_i max(0, -min(f'(x; e_i), f'(x; -e_i))): zero at coordinate-wise stationary points.
  double coordinatewise = 0.0;
  // min over the supplied directions of f'(x; d); negative means a descent direction exists.
  double directional = 0.0;
  // Unit direction attaining the directional measure.
  Vector witness;
};

// Step of the forward difference used when the objective has no exact
// one-sided derivative.
inline constexpr double kForwardDifferenceStep = 1e-7;

double one_sided_derivative(const Objective& f, const Vector& x, const Vector& d);

// Directions must be nonzero; they are normalized before use.
StationarityReport stationarity_report(const Objective& f, const Vector& x, const std::vector<Vector>& directions);
StationarityReport stationarity_report(const PiecewisePieces& f, const Vector& x,
                                       const std::vector<Vector>& directions);

}  // namespace nsbench
