#include "nsbench/batch.hpp"

#include "nsbench/errors.hpp"

namespace nsbench {

BatchObjective::BatchObjective(std::vector<ObjectivePtr> components, bool convex)
    : components_(std::move(components)), dimension_(0), convex_(convex) {
  NSBENCH_REQUIRE(!components_.empty(), "BatchObjective: needs at least one component");
  for (const auto& c : components_) NSBENCH_REQUIRE(c != nullptr, "BatchObjective: null component");
  dimension_ = components_.front()->dimension();
  NSBENCH_REQUIRE(dimension_ > 0, "BatchObjective: dimension must be positive");
  for (const auto& c : components_) {
    NSBENCH_REQUIRE(c->dimension() == dimension_, "BatchObjective: components differ in dimension");
  }
}

double BatchObjective::do_value(const Vector& x) const {
  double sum = 0.0;
  for (const auto& c : components_) sum += c->value(x);
  return sum / static_cast<double>(components_.size());
}

Vector BatchObjective::do_subgradient(const Vector& x) const { return averaged_full_gradient(*this, x); }

Evaluation BatchObjective::do_evaluate(const Vector& x) const {
  Evaluation out{0.0, Vector::Zero(dimension_)};
  for (const auto& c : components_) {
    Evaluation e = c->evaluate(x);
    out.value += e.value;
    out.subgradient += e.subgradient;
  }
  const auto count = static_cast<double>(components_.size());
  out.value /= count;
  out.subgradient /= count;
  return out;
}

bool BatchObjective::differentiable_at(const Vector& x) const {
  for (const auto& c : components_) {
    if (!c->differentiable_at(x)) return false;
  }
  return true;
}

std::optional<double> BatchObjective::directional_derivative(const Vector& x, const Vector& d) const {
  double sum = 0.0;
  for (const auto& c : components_) {
    auto dd = c->directional_derivative(x, d);
    if (!dd) return std::nullopt;
    sum += *dd;
  }
  return sum / static_cast<double>(components_.size());
}

double BatchObjective::value_flops() const {
  double f = 0.0;
  for (const auto& c : components_) f += c->value_flops();
  return f;
}

double BatchObjective::subgradient_flops() const {
  double f = 0.0;
  for (const auto& c : components_) f += c->subgradient_flops();
  return f;
}

BatchObjectivePtr as_batch(ObjectivePtr obj, bool convex) {
  return std::make_shared<BatchObjective>(std::vector<ObjectivePtr>{std::move(obj)}, convex);
}

Vector averaged_full_gradient(const BatchObjective& bobj, const Vector& x) {
  check_dimension(bobj, x);
  Vector sum = Vector::Zero(bobj.dimension());
  for (std::size_t i = 0; i < bobj.size(); ++i) sum += bobj.component(i).subgradient(x);
  return sum / static_cast<double>(bobj.size());
}

std::pair<std::size_t, Vector> random_batch_gradient(const BatchObjective& bobj, const Vector& x, Rng& rng) {
  check_dimension(bobj, x);
  const std::size_t i = uniform_index(rng, bobj.size());
  return {i, bobj.component(i).subgradient(x)};
}

}  // namespace nsbench
