#pragma once

#include <cstdint>

#include "nsbench/batch.hpp"
#include "nsbench/clock.hpp"

namespace nsbench {

// Oracle calls made on behalf of an algorithm, in component-evaluation units:
// a full evaluation of an N-batch objective counts N.
struct OracleCounts {
  std::uint64_t values = 0;
  std::uint64_t subgradients = 0;
};

// Stateful, counted access to a function for one optimizer run. Not shared
// between workers.
class Oracle {
 public:
  explicit Oracle(RunClock* clock = nullptr) : clock_(clock) {}
  virtual ~Oracle() = default;

  virtual Index dimension() const = 0;
  virtual double value(const Vector& x) = 0;
  virtual Vector subgradient(const Vector& x) = 0;
  virtual Evaluation evaluate(const Vector& x) = 0;
  virtual bool differentiable_at(const Vector&) const { return true; }

  const OracleCounts& counts() const { return counts_; }

 protected:
  void charge(double flops) {
    if (clock_ != nullptr) clock_->charge(flops);
  }

  OracleCounts counts_;
  RunClock* clock_;
};

class ObjectiveOracle final : public Oracle {
 public:
  explicit ObjectiveOracle(const Objective& obj, RunClock* clock = nullptr) : Oracle(clock), obj_(obj) {}

  Index dimension() const override { return obj_.dimension(); }
  double value(const Vector& x) override;
  Vector subgradient(const Vector& x) override;
  Evaluation evaluate(const Vector& x) override;
  bool differentiable_at(const Vector& x) const override { return obj_.differentiable_at(x); }

  const Objective& objective() const { return obj_; }

 private:
  const Objective& obj_;
};

// Full mean value, subgradient of one uniformly drawn batch per call.
class RandomBatchOracle final : public Oracle {
 public:
  RandomBatchOracle(const BatchObjective& bobj, Rng& rng, RunClock* clock = nullptr)
      : Oracle(clock), bobj_(bobj), rng_(rng) {}

  Index dimension() const override { return bobj_.dimension(); }
  double value(const Vector& x) override;
  Vector subgradient(const Vector& x) override;
  Evaluation evaluate(const Vector& x) override;

 private:
  const BatchObjective& bobj_;
  Rng& rng_;
};

}  // namespace nsbench
