#pragma once

#include <utility>

#include "nsbench/batch.hpp"
#include "nsbench/optim/trajectory.hpp"

namespace nsbench::optim {

struct AdamParams {
  double alpha = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  void validate() const;
};

struct AdamState {
  // Bias-corrected moment averages (m_hat, v_hat of the usual recursion).
  Vector m;
  Vector v;  // entrywise >= 0
  std::int64_t t = 0;
  AdamParams params;

  static AdamState init(Index dimension, const AdamParams& params = {});
};

// Step -alpha * m / (sqrt(v) + epsilon) on the bias-corrected averages. Entries
// with v = 0 (possible only when epsilon = 0 and the coordinate never saw a
// nonzero gradient) take a zero step.
std::pair<AdamState, Vector> adam_step(const AdamState& state, const Vector& g);

// One random batch subgradient per iteration; the full objective is evaluated
// after each step for the record only.
RunResult adam_run(const BatchObjective& bobj, const Vector& x0, std::int64_t budget, Rng& rng,
                   const AdamParams& params = {}, RunClock* clock = nullptr);

}  // namespace nsbench::optim
