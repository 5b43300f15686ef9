#pragma once

#include "nsbench/objective.hpp"
#include "nsbench/optim/trajectory.hpp"
#include "nsbench/random.hpp"

namespace nsbench::optim {

struct GradSamplingParams {
  double initial_radius = 0.1;
  double shrink = 0.1;  // theta in (0, 1)
  double nu_tol = 1e-6;
  double armijo = 1e-4;
  int max_backtracks = 50;
  // Random perturbations tried when an accepted point is a kink.
  int perturbation_tries = 10;

  void validate() const;
};

struct GradSamplingState {
  Vector x;
  double f = 0.0;
  double radius = 0.1;  // > 0
  std::size_t sample_count = 0;  // 2n
  double last_min_norm = 0.0;
  std::int64_t iterations = 0;
  std::int64_t shrinks = 0;

  static GradSamplingState init(Oracle& oracle, const Vector& x0, const GradSamplingParams& params = {});
};

// Subgradients at x and at 2n uniform points of the radius ball (2n + 1 calls),
// then a normalized Armijo backtracking step along the negated minimum-norm
// hull element. A small hull element or a failed search shrinks the radius.
GradSamplingState gradient_sampling_iterate(GradSamplingState state, Oracle& oracle, Rng& rng,
                                            const GradSamplingParams& params = {}, RunClock* clock = nullptr);

RunResult gradient_sampling_run(const Objective& obj, const Vector& x0, std::int64_t budget, Rng& rng,
                                const GradSamplingParams& params = {}, RunClock* clock = nullptr);

}  // namespace nsbench::optim
