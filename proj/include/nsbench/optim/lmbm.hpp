#pragma once

#include <string_view>

#include "nsbench/batch.hpp"
#include "nsbench/kit/aggregation.hpp"
#include "nsbench/kit/line_search.hpp"
#include "nsbench/kit/limited_memory.hpp"
#include "nsbench/optim/trajectory.hpp"

namespace nsbench::optim {

struct LmbmParams {
  kit::LineSearchParams line_search;
  kit::LimitedMemoryParams memory;
  double w_tol = 1e-5;

  void validate() const;
};

struct LmbmState {
  Vector x;
  double f = 0.0;
  Vector xi;  // subgradient at x
  kit::AggregatePair aggregate;
  kit::LimitedMemory memory{1};
  double w = 0.0;  // model decrease of the last direction, >= 0
  std::int64_t serious_steps = 0;
  std::int64_t null_steps = 0;
  std::int64_t memory_resets = 0;
  bool stalled = false;
  bool converged = false;

  std::int64_t iterations() const { return serious_steps + null_steps; }
};

LmbmState lmbm_init(Oracle& oracle, const Vector& x0, const LmbmParams& params = {});

// One serious or null step. Sets `converged` without stepping when the model
// decrease w is at most w_tol. A failed line search first restarts the memory
// and aggregate; if they are already fresh the state is flagged stalled.
LmbmState lmbm_iterate(LmbmState state, Oracle& oracle, const LmbmParams& params = {}, RunClock* clock = nullptr);
LmbmState lmbm_iterate(LmbmState state, const Objective& obj, const LmbmParams& params = {});

RunResult lmbm_run(const Objective& obj, const Vector& x0, std::int64_t budget, const LmbmParams& params = {},
                   RunClock* clock = nullptr);

enum class BatchMode { average, random_batch, sequential };

std::string_view to_string(BatchMode mode);

// average: full mean value and averaged_full_gradient per oracle call.
// random_batch: full mean value and one random batch subgradient per call.
// sequential: LMBM to its stopping criterion on batch 0, warm start on batch 1,
// and so on cyclically. A batch that converged at the current iterate is
// skipped; the run stops early once a whole cycle makes no step.
// Every mode records full-objective values.
RunResult lmbm_batched(const BatchObjective& bobj, BatchMode mode, const Vector& x0, std::int64_t budget, Rng& rng,
                       const LmbmParams& params = {}, RunClock* clock = nullptr);

}  // namespace nsbench::optim
