#pragma once

#include <cstddef>
#include <vector>

#include "nsbench/types.hpp"

namespace nsbench::kit {

enum class StepKind { serious, null };
enum class PairKind { bfgs, sr1 };

struct CorrectionPair {
  Vector s;  // step difference
  Vector u;  // subgradient difference
  PairKind kind = PairKind::bfgs;
};

struct LimitedMemoryParams {
  std::size_t capacity = 7;
  // Serious pairs need s'u > curvature_eps * ||s|| * ||u||.
  double curvature_eps = 1e-10;
  // Null pairs need u'(s - Du) > sr1_eps * ||u|| * ||s - Du||.
  double sr1_eps = 1e-8;
};

// Inverse metric D represented by correction pairs applied in order to
// D0 = gamma * I, where gamma = s'u / u'u of the newest BFGS pair (1 if none).
// BFGS pairs apply the inverse BFGS update, SR1 pairs the inverse SR1 update.
// Values are immutable; updates return a new memory.
class LimitedMemory {
 public:
  explicit LimitedMemory(Index dimension, LimitedMemoryParams params = {});

  Index dimension() const { return dimension_; }
  const LimitedMemoryParams& params() const { return params_; }
  const std::vector<CorrectionPair>& pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }
  std::size_t skipped() const { return skipped_; }
  double scaling() const { return scaling_; }
  // Whether pair i takes part in the product (an SR1 pair is dropped when
  // its denominator stops being positive after eviction or rescaling).
  bool pair_active(std::size_t i) const { return active_.at(i); }

  Vector apply(const Vector& v) const;
  LimitedMemory updated(const Vector& s, const Vector& u, StepKind kind) const;

  double apply_flops() const;

 private:
  Vector apply_prefix(std::size_t levels, const Vector& v) const;
  void rebuild();

  Index dimension_;
  LimitedMemoryParams params_;
  std::vector<CorrectionPair> pairs_;
  std::vector<bool> active_;
  std::vector<double> rho_;    // bfgs: 1 / s'u
  std::vector<Vector> sr1_r_;  // sr1: s - D_{i} u
  std::vector<double> sr1_denominator_;
  double scaling_ = 1.0;
  std::size_t skipped_ = 0;
};

// D * v.
Vector lm_apply(const LimitedMemory& mem, const Vector& v);
LimitedMemory lm_update(const LimitedMemory& mem, const Vector& s, const Vector& u, StepKind kind);

}  // namespace nsbench::kit
