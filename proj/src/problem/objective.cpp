#include "nsbench/objective.hpp"

#include <cmath>
#include <string>

#include "nsbench/errors.hpp"

namespace nsbench {

void check_dimension(const Objective& obj, const Vector& x) {
  if (x.size() != obj.dimension()) {
    throw ContractViolation("dimension mismatch: objective has n=" + std::to_string(obj.dimension()) +
                            ", point has " + std::to_string(x.size()));
  }
}

namespace {

void check_value(double v) {
  if (!std::isfinite(v)) throw NumericalDomainError("objective value is not finite");
}

void check_subgradient(const Vector& g, Index n) {
  if (g.size() != n) throw ContractViolation("subgradient has wrong dimension");
  if (!g.allFinite()) throw NumericalDomainError("subgradient is not finite");
}

}  // namespace

double Objective::value(const Vector& x) const {
  check_dimension(*this, x);
  const double v = do_value(x);
  check_value(v);
  return v;
}

Vector Objective::subgradient(const Vector& x) const {
  check_dimension(*this, x);
  Vector g = do_subgradient(x);
  check_subgradient(g, dimension());
  return g;
}

Evaluation Objective::evaluate(const Vector& x) const {
  check_dimension(*this, x);
  Evaluation e = do_evaluate(x);
  check_value(e.value);
  check_subgradient(e.subgradient, dimension());
  return e;
}

Evaluation Objective::do_evaluate(const Vector& x) const {
  return {do_value(x), do_subgradient(x)};
}

std::optional<double> Objective::directional_derivative(const Vector&, const Vector&) const {
  return std::nullopt;
}

bool Objective::differentiable_at(const Vector&) const { return true; }

double Objective::value_flops() const { return 2.0 * static_cast<double>(dimension()); }

double Objective::subgradient_flops() const { return 4.0 * static_cast<double>(dimension()); }

namespace {

class L1Regularized final : public Objective {
 public:
  L1Regularized(ObjectivePtr inner, double weight) : inner_(std::move(inner)), weight_(weight) {}

  Index dimension() const override { return inner_->dimension(); }

  std::optional<double> directional_derivative(const Vector& x, const Vector& d) const override {
    auto base = inner_->directional_derivative(x, d);
    if (!base) return std::nullopt;
    double reg = 0.0;
    for (Index i = 0; i < x.size(); ++i) {
      reg += x[i] != 0.0 ? (x[i] > 0 ? d[i] : -d[i]) : std::abs(d[i]);
    }
    return *base + weight_ * reg;
  }

  bool differentiable_at(const Vector& x) const override {
    if (weight_ > 0.0 && (x.array() == 0.0).any()) return false;
    return inner_->differentiable_at(x);
  }

  std::size_t component_count() const override { return inner_->component_count(); }
  double value_flops() const override { return inner_->value_flops() + 2.0 * dimension(); }
  double subgradient_flops() const override { return inner_->subgradient_flops() + 2.0 * dimension(); }

 protected:
  double do_value(const Vector& x) const override {
    return inner_->value(x) + weight_ * x.lpNorm<1>();
  }

  Vector do_subgradient(const Vector& x) const override {
    return inner_->subgradient(x) + weight_ * sign(x);
  }

  Evaluation do_evaluate(const Vector& x) const override {
    Evaluation e = inner_->evaluate(x);
    e.value += weight_ * x.lpNorm<1>();
    e.subgradient += weight_ * sign(x);
    return e;
  }

 private:
  static Vector sign(const Vector& x) {
    return x.unaryExpr([](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); });
  }

  ObjectivePtr inner_;
  double weight_;
};

}  // namespace

ObjectivePtr add_l1(ObjectivePtr obj, double weight) {
  NSBENCH_REQUIRE(obj != nullptr, "add_l1: null objective");
  NSBENCH_REQUIRE(weight >= 0.0 && std::isfinite(weight), "add_l1: weight must be a finite nonnegative number");
  return std::make_shared<L1Regularized>(std::move(obj), weight);
}

}  // namespace nsbench
