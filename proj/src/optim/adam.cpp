#include "nsbench/optim/adam.hpp"

#include <cmath>

#include "nsbench/errors.hpp"

namespace nsbench::optim {

void AdamParams::validate() const {
  NSBENCH_REQUIRE(alpha > 0.0, "adam: alpha must be positive");
  NSBENCH_REQUIRE(beta1 >= 0.0 && beta1 < 1.0, "adam: beta1 must lie in [0, 1)");
  NSBENCH_REQUIRE(beta2 >= 0.0 && beta2 < 1.0, "adam: beta2 must lie in [0, 1)");
  NSBENCH_REQUIRE(epsilon >= 0.0, "adam: epsilon must be nonnegative");
}

AdamState AdamState::init(Index dimension, const AdamParams& params) {
  params.validate();
  return {Vector::Zero(dimension), Vector::Zero(dimension), 0, params};
}

std::pair<AdamState, Vector> adam_step(const AdamState& state, const Vector& g) {
  NSBENCH_REQUIRE(g.size() == state.m.size(), "adam_step: dimension mismatch");
  const AdamParams& p = state.params;
  AdamState next = state;
  next.t += 1;
  const double t = static_cast<double>(next.t);
  // Debiased averages: with w_t = (1 - beta) / (1 - beta^t) the recursion
  // a_t = (1 - w_t) a_{t-1} + w_t g equals m_t / (1 - beta1^t). w_1 is exactly 1.
  const double w1 = (1.0 - p.beta1) / (1.0 - std::pow(p.beta1, t));
  const double w2 = (1.0 - p.beta2) / (1.0 - std::pow(p.beta2, t));
  next.m = (1.0 - w1) * state.m + w1 * g;
  next.v = (1.0 - w2) * state.v + w2 * g.cwiseProduct(g);
  Vector step(g.size());
  for (Index i = 0; i < g.size(); ++i) {
    const double denom = std::sqrt(next.v[i]) + p.epsilon;
    step[i] = denom > 0.0 ? -p.alpha * (next.m[i] / denom) : 0.0;
  }
  return {std::move(next), std::move(step)};
}

RunResult adam_run(const BatchObjective& bobj, const Vector& x0, std::int64_t budget, Rng& rng,
                   const AdamParams& params, RunClock* clock) {
  NSBENCH_REQUIRE(budget >= 1, "adam_run: budget must be at least 1");
  check_dimension(bobj, x0);
  WorkClock fallback;
  RunClock& timer = clock != nullptr ? *clock : fallback;

  const double n = static_cast<double>(bobj.dimension());
  TrajectoryRecorder recorder(timer);
  OracleCounts counts;
  Vector x = x0;
  AdamState state = AdamState::init(bobj.dimension(), params);
  recorder.record(0, bobj.value(x), counts);

  for (std::int64_t k = 1; k <= budget; ++k) {
    {
      TimedSection timed(timer);
      auto [index, g] = random_batch_gradient(bobj, x, rng);
      counts.subgradients += 1;
      timer.charge(bobj.component(index).subgradient_flops() + 10.0 * n);
      auto [next, step] = adam_step(state, g);
      state = std::move(next);
      x += step;
    }
    recorder.record(k, bobj.value(x), counts);
  }
  return {recorder.take(), std::move(x), false};
}

}  // namespace nsbench::optim
