#include "nsbench/optim/runner.hpp"

#include "nsbench/errors.hpp"

namespace nsbench::optim {

std::string_view to_string(Algorithm alg) { return kAlgorithmNames.at(static_cast<std::size_t>(alg)); }

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (std::size_t i = 0; i < kAlgorithmNames.size(); ++i) {
    if (kAlgorithmNames[i] == name) return static_cast<Algorithm>(i);
  }
  return std::nullopt;
}

namespace {

bool same(const kit::LineSearchParams& a, const kit::LineSearchParams& b) {
  return a.eps_left == b.eps_left && a.eps_right == b.eps_right && a.t_min == b.t_min &&
         a.t_initial == b.t_initial && a.t_max == b.t_max && a.max_trials == b.max_trials && a.gamma == b.gamma;
}

}  // namespace

bool AlgorithmParams::operator==(const AlgorithmParams& o) const {
  return adam.alpha == o.adam.alpha && adam.beta1 == o.adam.beta1 && adam.beta2 == o.adam.beta2 &&
         adam.epsilon == o.adam.epsilon && sfo.initial_step == o.sfo.initial_step &&
         sfo.eigenvalue_floor == o.sfo.eigenvalue_floor && sfo.subspace_cap == o.sfo.subspace_cap &&
         same(lmbm.line_search, o.lmbm.line_search) && lmbm.memory.capacity == o.lmbm.memory.capacity &&
         lmbm.memory.curvature_eps == o.lmbm.memory.curvature_eps && lmbm.memory.sr1_eps == o.lmbm.memory.sr1_eps &&
         lmbm.w_tol == o.lmbm.w_tol && gradsamp.initial_radius == o.gradsamp.initial_radius &&
         gradsamp.shrink == o.gradsamp.shrink && gradsamp.nu_tol == o.gradsamp.nu_tol &&
         gradsamp.armijo == o.gradsamp.armijo && gradsamp.max_backtracks == o.gradsamp.max_backtracks &&
         gradsamp.perturbation_tries == o.gradsamp.perturbation_tries && lmbm_gamma == o.lmbm_gamma;
}

RunResult run_algorithm(Algorithm alg, const AlgorithmParams& params, const Problem& problem, std::int64_t budget,
                        std::uint64_t seed, RunClock* clock) {
  NSBENCH_REQUIRE(problem.objective != nullptr, "run_algorithm: problem has no objective");
  const BatchObjective& bobj = *problem.objective;
  Rng rng(seed);
  LmbmParams lmbm = params.lmbm;
  lmbm.line_search.gamma = params.lmbm_gamma.value_or(bobj.convex() ? 0.0 : 0.5);

  RunResult result;
  switch (alg) {
    case Algorithm::adam:
      result = adam_run(bobj, problem.x0, budget, rng, params.adam, clock);
      break;
    case Algorithm::sfo:
      result = sfo_run(bobj, problem.x0, budget, params.sfo, clock);
      break;
    case Algorithm::lmbm:
      result = lmbm_run(bobj, problem.x0, budget, lmbm, clock);
      break;
    case Algorithm::lmbm_avg:
      result = lmbm_batched(bobj, BatchMode::average, problem.x0, budget, rng, lmbm, clock);
      break;
    case Algorithm::lmbm_rand:
      result = lmbm_batched(bobj, BatchMode::random_batch, problem.x0, budget, rng, lmbm, clock);
      break;
    case Algorithm::lmbm_seq:
      result = lmbm_batched(bobj, BatchMode::sequential, problem.x0, budget, rng, lmbm, clock);
      break;
    case Algorithm::gradsamp:
      result = gradient_sampling_run(bobj, problem.x0, budget, rng, params.gradsamp, clock);
      break;
  }
  result.record.meta.problem = problem.name;
  result.record.meta.algorithm = std::string(to_string(alg));
  result.record.meta.seed = seed;
  return result;
}

}  // namespace nsbench::optim
