#include "nsbench/optim/gradient_sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "nsbench/errors.hpp"
#include "nsbench/kit/min_norm.hpp"

namespace nsbench::optim {

void GradSamplingParams::validate() const {
  NSBENCH_REQUIRE(initial_radius > 0.0, "gradsamp: initial_radius must be positive");
  NSBENCH_REQUIRE(shrink > 0.0 && shrink < 1.0, "gradsamp: shrink must lie in (0, 1)");
  NSBENCH_REQUIRE(nu_tol >= 0.0, "gradsamp: nu_tol must be nonnegative");
  NSBENCH_REQUIRE(armijo > 0.0 && armijo < 1.0, "gradsamp: armijo must lie in (0, 1)");
  NSBENCH_REQUIRE(max_backtracks >= 1, "gradsamp: max_backtracks must be positive");
  NSBENCH_REQUIRE(perturbation_tries >= 0, "gradsamp: perturbation_tries must be nonnegative");
}

GradSamplingState GradSamplingState::init(Oracle& oracle, const Vector& x0, const GradSamplingParams& params) {
  params.validate();
  NSBENCH_REQUIRE(x0.size() == oracle.dimension(), "gradsamp: dimension mismatch");
  GradSamplingState s;
  s.x = x0;
  s.f = oracle.value(x0);
  s.radius = params.initial_radius;
  s.sample_count = 2 * static_cast<std::size_t>(x0.size());
  return s;
}

GradSamplingState gradient_sampling_iterate(GradSamplingState s, Oracle& oracle, Rng& rng,
                                            const GradSamplingParams& params, RunClock* clock) {
  NSBENCH_REQUIRE(s.radius > 0.0, "gradsamp: radius must be positive");
  NSBENCH_REQUIRE(s.x.size() == oracle.dimension(), "gradsamp: dimension mismatch");
  const Index n = s.x.size();
  NSBENCH_REQUIRE(s.sample_count == 2 * static_cast<std::size_t>(n), "gradsamp: sample count must be 2n");

  std::vector<Vector> grads;
  grads.reserve(s.sample_count + 1);
  grads.push_back(oracle.subgradient(s.x));
  for (std::size_t i = 0; i < s.sample_count; ++i) grads.push_back(oracle.subgradient(uniform_in_ball(rng, s.x, s.radius)));
  const kit::MinNormPoint mn = kit::min_norm_convex_hull(grads);
  if (clock != nullptr) {
    const double m = static_cast<double>(grads.size());
    clock->charge(4.0 * m * m * static_cast<double>(n) + 10.0 * m * m * m);
  }
  const double norm = mn.point.norm();
  s.last_min_norm = norm;
  s.iterations += 1;
  auto shrink = [&] {
    s.radius = std::max(s.radius * params.shrink, std::numeric_limits<double>::min());
    s.shrinks += 1;
  };
  if (norm <= params.nu_tol) {
    shrink();
    return s;
  }

  const Vector d = -mn.point / norm;
  double t = 1.0;
  for (int k = 0; k < params.max_backtracks; ++k, t *= 0.5) {
    Vector y = s.x + t * d;
    const double fy = oracle.value(y);
    if (!(fy <= s.f - params.armijo * t * norm)) continue;
    double f_accept = fy;
    if (!oracle.differentiable_at(y)) {
      for (int tries = 0; tries < params.perturbation_tries; ++tries) {
        Vector z = uniform_in_ball(rng, y, 0.1 * t * std::min(1.0, s.radius));
        if (!oracle.differentiable_at(z)) continue;
        const double fz = oracle.value(z);
        if (fz <= s.f - params.armijo * t * norm) {
          y = std::move(z);
          f_accept = fz;
          break;
        }
      }
    }
    s.x = std::move(y);
    s.f = f_accept;
    return s;
  }
  shrink();
  return s;
}

RunResult gradient_sampling_run(const Objective& obj, const Vector& x0, std::int64_t budget, Rng& rng,
                                const GradSamplingParams& params, RunClock* clock) {
  NSBENCH_REQUIRE(budget >= 1, "gradient_sampling_run: budget must be at least 1");
  check_dimension(obj, x0);
  WorkClock fallback;
  RunClock& timer = clock != nullptr ? *clock : fallback;
  ObjectiveOracle oracle(obj, &timer);
  TrajectoryRecorder recorder(timer);
  GradSamplingState state;
  {
    TimedSection timed(timer);
    state = GradSamplingState::init(oracle, x0, params);
  }
  recorder.record(0, state.f, oracle.counts());
  for (std::int64_t k = 1; k <= budget; ++k) {
    {
      TimedSection timed(timer);
      state = gradient_sampling_iterate(std::move(state), oracle, rng, params, &timer);
    }
    recorder.record(k, state.f, oracle.counts());
  }
  return {recorder.take(), state.x, false};
}

}  // namespace nsbench::optim
