#include "nsbench/optim/lmbm.hpp"

#include <cmath>
#include <optional>

#include "nsbench/errors.hpp"

namespace nsbench::optim {

void LmbmParams::validate() const {
  NSBENCH_REQUIRE(w_tol >= 0.0, "lmbm: w_tol must be nonnegative");
  NSBENCH_REQUIRE(memory.capacity >= 1, "lmbm: memory capacity must be positive");
  NSBENCH_REQUIRE(line_search.gamma >= 0.0, "lmbm: gamma must be nonnegative");
}

std::string_view to_string(BatchMode mode) {
  switch (mode) {
    case BatchMode::average:
      return "average";
    case BatchMode::random_batch:
      return "random_batch";
    case BatchMode::sequential:
      return "sequential";
  }
  return "?";
}

namespace {

void charge(RunClock* clock, double flops) {
  if (clock != nullptr) clock->charge(flops);
}

bool fresh(const LmbmState& s) { return s.memory.empty() && s.aggregate.beta == 0.0 && s.aggregate.xi == s.xi; }

void restart(LmbmState& s) {
  s.memory = kit::LimitedMemory(s.x.size(), s.memory.params());
  s.aggregate = {s.xi, 0.0};
  s.memory_resets += 1;
}

// Mean of the batch values and averaged_full_gradient, evaluated the same way
// as the batch objective itself.
class AveragedOracle final : public Oracle {
 public:
  AveragedOracle(const BatchObjective& bobj, RunClock* clock) : Oracle(clock), bobj_(bobj) {}

  Index dimension() const override { return bobj_.dimension(); }

  double value(const Vector& x) override {
    counts_.values += bobj_.size();
    charge(bobj_.value_flops());
    double sum = 0.0;
    for (std::size_t i = 0; i < bobj_.size(); ++i) sum += bobj_.component(i).value(x);
    return sum / static_cast<double>(bobj_.size());
  }

  Vector subgradient(const Vector& x) override {
    counts_.subgradients += bobj_.size();
    charge(bobj_.subgradient_flops());
    return averaged_full_gradient(bobj_, x);
  }

  Evaluation evaluate(const Vector& x) override {
    counts_.values += bobj_.size();
    counts_.subgradients += bobj_.size();
    charge(bobj_.subgradient_flops());
    double sum = 0.0;
    for (std::size_t i = 0; i < bobj_.size(); ++i) sum += bobj_.component(i).value(x);
    return {sum / static_cast<double>(bobj_.size()), averaged_full_gradient(bobj_, x)};
  }

  bool differentiable_at(const Vector& x) const override { return bobj_.differentiable_at(x); }

 private:
  const BatchObjective& bobj_;
};

OracleCounts operator+(const OracleCounts& a, const OracleCounts& b) {
  return {a.values + b.values, a.subgradients + b.subgradients};
}

template <class RecordValue>
RunResult run_loop(Oracle& oracle, const Vector& x0, std::int64_t budget, const LmbmParams& params, RunClock& timer,
                   RecordValue&& record_value) {
  TrajectoryRecorder recorder(timer);
  LmbmState state;
  {
    TimedSection timed(timer);
    state = lmbm_init(oracle, x0, params);
  }
  recorder.record(0, record_value(state), oracle.counts());
  for (std::int64_t k = 1; k <= budget; ++k) {
    {
      TimedSection timed(timer);
      state = lmbm_iterate(std::move(state), oracle, params, &timer);
    }
    if (state.converged) break;
    if (state.stalled) {
      recorder.pad_stalled(budget);
      break;
    }
    recorder.record(k, record_value(state), oracle.counts());
  }
  return {recorder.take(), state.x, state.converged};
}

}  // namespace

LmbmState lmbm_init(Oracle& oracle, const Vector& x0, const LmbmParams& params) {
  params.validate();
  NSBENCH_REQUIRE(x0.size() == oracle.dimension(), "lmbm_init: dimension mismatch");
  LmbmState s;
  s.x = x0;
  Evaluation e = oracle.evaluate(x0);
  s.f = e.value;
  s.xi = std::move(e.subgradient);
  s.aggregate = {s.xi, 0.0};
  s.memory = kit::LimitedMemory(x0.size(), params.memory);
  return s;
}

LmbmState lmbm_iterate(LmbmState s, Oracle& oracle, const LmbmParams& params, RunClock* clock) {
  NSBENCH_REQUIRE(s.x.size() == oracle.dimension(), "lmbm_iterate: dimension mismatch");
  if (s.converged || s.stalled) return s;
  const double n = static_cast<double>(s.x.size());

  for (;;) {
    const Vector d_xi = s.memory.apply(s.aggregate.xi);
    charge(clock, s.memory.apply_flops() + 4.0 * n);
    s.w = std::max(0.0, s.aggregate.xi.dot(d_xi) + 2.0 * s.aggregate.beta);
    if (s.w <= params.w_tol) {
      s.converged = true;
      return s;
    }
    const Vector d = -d_xi;
    if (d.norm() == 0.0) {
      // Aggregate cancelled to zero while its locality is still large.
      if (fresh(s)) {
        s.stalled = true;
        return s;
      }
      restart(s);
      continue;
    }

    kit::LineSearchOutcome ls;
    try {
      ls = kit::nonsmooth_line_search(oracle, s.x, s.f, d, s.w, params.line_search);
    } catch (const LineSearchFailure&) {
      if (fresh(s)) {
        s.stalled = true;
        return s;
      }
      restart(s);
      continue;
    }

    const Vector step = ls.t * d;
    const Vector change = ls.subgradient - s.xi;
    if (ls.kind == kit::StepKind::serious) {
      s.memory = s.memory.updated(step, change, kit::StepKind::serious);
      s.x = std::move(ls.point);
      s.f = ls.value;
      s.xi = std::move(ls.subgradient);
      s.aggregate = {s.xi, 0.0};
      s.serious_steps += 1;
      charge(clock, 10.0 * n);
    } else {
      const kit::LimitedMemory& metric = s.memory;
      const std::array<kit::WeightedSubgradient, 3> candidates{
          kit::WeightedSubgradient{s.xi, 0.0}, kit::WeightedSubgradient{ls.subgradient, ls.locality},
          kit::WeightedSubgradient{s.aggregate.xi, s.aggregate.beta}};
      kit::AggregateResult agg = kit::aggregate_three(candidates, [&](const Vector& v) { return metric.apply(v); });
      charge(clock, 3.0 * metric.apply_flops() + 30.0 * n);
      s.aggregate = std::move(agg.pair);
      s.aggregate.beta = std::max(0.0, s.aggregate.beta);
      s.memory = s.memory.updated(step, change, kit::StepKind::null);
      s.null_steps += 1;
      charge(clock, 2.0 * s.memory.apply_flops() + 10.0 * n);
    }
    return s;
  }
}

LmbmState lmbm_iterate(LmbmState state, const Objective& obj, const LmbmParams& params) {
  ObjectiveOracle oracle(obj);
  return lmbm_iterate(std::move(state), oracle, params);
}

RunResult lmbm_run(const Objective& obj, const Vector& x0, std::int64_t budget, const LmbmParams& params,
                   RunClock* clock) {
  NSBENCH_REQUIRE(budget >= 1, "lmbm_run: budget must be at least 1");
  check_dimension(obj, x0);
  WorkClock fallback;
  RunClock& timer = clock != nullptr ? *clock : fallback;
  ObjectiveOracle oracle(obj, &timer);
  return run_loop(oracle, x0, budget, params, timer, [](const LmbmState& s) { return s.f; });
}

RunResult lmbm_batched(const BatchObjective& bobj, BatchMode mode, const Vector& x0, std::int64_t budget, Rng& rng,
                       const LmbmParams& params, RunClock* clock) {
  NSBENCH_REQUIRE(budget >= 1, "lmbm_batched: budget must be at least 1");
  check_dimension(bobj, x0);
  WorkClock fallback;
  RunClock& timer = clock != nullptr ? *clock : fallback;

  switch (mode) {
    case BatchMode::average: {
      AveragedOracle oracle(bobj, &timer);
      return run_loop(oracle, x0, budget, params, timer, [](const LmbmState& s) { return s.f; });
    }
    case BatchMode::random_batch: {
      RandomBatchOracle oracle(bobj, rng, &timer);
      return run_loop(oracle, x0, budget, params, timer, [](const LmbmState& s) { return s.f; });
    }
    case BatchMode::sequential:
      break;
    default:
      throw ContractViolation("lmbm_batched: invalid batch mode");
  }

  TrajectoryRecorder recorder(timer);
  OracleCounts spent;
  recorder.record(0, bobj.value(x0), spent);
  Vector x = x0;
  std::int64_t k = 0;
  bool last_stalled = false;
  // Point at which each batch's sub-run last converged; such a batch is not
  // rerun until another batch has moved the iterate.
  std::vector<std::optional<Vector>> settled(bobj.size());
  auto is_settled = [&](std::size_t b) { return settled[b].has_value() && *settled[b] == x; };
  while (k < budget) {
    std::int64_t steps_this_cycle = 0;
    for (std::size_t b = 0; b < bobj.size() && k < budget; ++b) {
      if (is_settled(b)) continue;
      ObjectiveOracle oracle(bobj.component(b), &timer);
      LmbmState state;
      {
        TimedSection timed(timer);
        state = lmbm_init(oracle, x, params);
      }
      while (k < budget) {
        {
          TimedSection timed(timer);
          state = lmbm_iterate(std::move(state), oracle, params, &timer);
        }
        if (state.converged || state.stalled) break;
        ++k;
        ++steps_this_cycle;
        recorder.record(k, bobj.value(state.x), spent + oracle.counts());
      }
      last_stalled = state.stalled;
      x = state.x;
      settled[b] = state.converged ? std::optional<Vector>(x) : std::nullopt;
      spent = spent + oracle.counts();
    }
    if (steps_this_cycle == 0) break;
  }
  bool converged = true;
  for (std::size_t b = 0; b < bobj.size(); ++b) converged = converged && is_settled(b);
  if (last_stalled && !converged && k < budget) recorder.pad_stalled(budget);
  return {recorder.take(), x, converged};
}

}  // namespace nsbench::optim
