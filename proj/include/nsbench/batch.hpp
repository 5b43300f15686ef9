#pragma once

#include <utility>
#include <vector>

#include "nsbench/objective.hpp"
#include "nsbench/random.hpp"

namespace nsbench {

// F(x) = (1/N) * sum_i f_i(x) over N component objectives of equal dimension.
// As an Objective it evaluates the full mean; its subgradient is the averaged
// full gradient.
class BatchObjective final : public Objective {
 public:
  explicit BatchObjective(std::vector<ObjectivePtr> components, bool convex = false);

  Index dimension() const override { return dimension_; }
  std::size_t size() const { return components_.size(); }
  const Objective& component(std::size_t i) const { return *components_.at(i); }
  const ObjectivePtr& component_ptr(std::size_t i) const { return components_.at(i); }

  bool differentiable_at(const Vector& x) const override;
  std::optional<double> directional_derivative(const Vector& x, const Vector& d) const override;
  std::size_t component_count() const override { return components_.size(); }
  double value_flops() const override;
  double subgradient_flops() const override;

  // Declared convexity; selects the distance-measure default of bundle methods.
  bool convex() const { return convex_; }

 protected:
  double do_value(const Vector& x) const override;
  Vector do_subgradient(const Vector& x) const override;
  Evaluation do_evaluate(const Vector& x) const override;

 private:
  std::vector<ObjectivePtr> components_;
  Index dimension_;
  bool convex_;
};

using BatchObjectivePtr = std::shared_ptr<const BatchObjective>;

// Wraps a single objective as a one-component batch.
BatchObjectivePtr as_batch(ObjectivePtr obj, bool convex = false);

// (1/N) * sum_i subgrad(f_i, x).
Vector averaged_full_gradient(const BatchObjective& bobj, const Vector& x);

// Draws i uniformly from {0..N-1} and returns (i, subgrad(f_i, x)).
std::pair<std::size_t, Vector> random_batch_gradient(const BatchObjective& bobj, const Vector& x, Rng& rng);

}  // namespace nsbench
