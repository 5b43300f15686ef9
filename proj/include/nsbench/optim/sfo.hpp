#pragma once

#include <utility>
#include <vector>

#include "nsbench/batch.hpp"
#include "nsbench/optim/trajectory.hpp"

namespace nsbench::optim {

struct SfoParams {
  // Length of the very first step; sets the initial curvature scale ||g|| / initial_step.
  double initial_step = 0.1;
  double eigenvalue_floor = 1e-8;
  // Maximum subspace dimension; 0 selects 2N + 4.
  std::size_t subspace_cap = 0;

  void validate() const;
};

// Quadratic model of one batch, in coordinates of the shared subspace.
struct SfoBatchModel {
  bool visited = false;
  std::int64_t last_visit = -1;
  double f = 0.0;
  Vector position;  // coordinates of the last visited point
  Vector gradient;  // coordinates of the gradient there
  Matrix curvature;
  // Curvature assigned to directions that join the subspace later.
  double scale = 0.0;
};

struct SfoState {
  Vector x;
  Matrix basis;  // n x K, orthonormal columns
  Vector coords;  // x = basis * coords
  std::vector<SfoBatchModel> batches;
  std::int64_t steps = 0;
  std::size_t cap = 0;
  SfoParams params;
  double last_min_eigenvalue = 0.0;  // of the floored summed curvature
  std::size_t skipped_updates = 0;
};

SfoState sfo_init(const BatchObjective& bobj, const Vector& x0, const SfoParams& params = {});

// Visits the least recently visited batch (ties to the lowest index), refreshes
// its model with a BFGS update in the shared subspace, and moves to the
// minimizer of the sum of all visited models.
std::pair<SfoState, Vector> sfo_step(SfoState state, const BatchObjective& bobj, RunClock* clock = nullptr,
                                     OracleCounts* counts = nullptr);

RunResult sfo_run(const BatchObjective& bobj, const Vector& x0, std::int64_t budget, const SfoParams& params = {},
                  RunClock* clock = nullptr);

}  // namespace nsbench::optim
