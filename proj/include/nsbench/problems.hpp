#pragma once

#include <functional>

#include "nsbench/objective.hpp"

namespace nsbench {

// 0.5 * x'Hx + c'x + offset with symmetric H.
class QuadraticObjective final : public Objective {
 public:
  QuadraticObjective(Matrix hessian, Vector linear, double offset = 0.0);

  Index dimension() const override { return linear_.size(); }
  std::optional<double> directional_derivative(const Vector& x, const Vector& d) const override;
  double value_flops() const override;
  double subgradient_flops() const override;

  const Matrix& hessian() const { return hessian_; }
  const Vector& linear() const { return linear_; }

 protected:
  double do_value(const Vector& x) const override;
  Vector do_subgradient(const Vector& x) const override;

 private:
  Matrix hessian_;
  Vector linear_;
  double offset_;
};

// max_i x_i^2. Minimum 0 at the origin.
class MaxQ final : public Objective {
 public:
  explicit MaxQ(Index n);

  Index dimension() const override { return n_; }
  std::optional<double> directional_derivative(const Vector& x, const Vector& d) const override;
  bool differentiable_at(const Vector& x) const override;

  // x_i = i for i <= n/2 and x_i = -i otherwise (1-based).
  static Vector standard_start(Index n);

 protected:
  double do_value(const Vector& x) const override;
  Vector do_subgradient(const Vector& x) const override;

 private:
  std::vector<Index> active(const Vector& x) const;

  Index n_;
};

// Objective from callables; handy for one-off test functions.
class FunctionObjective final : public Objective {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using SubgradientFn = std::function<Vector(const Vector&)>;

  FunctionObjective(Index n, ValueFn value, SubgradientFn subgradient);

  Index dimension() const override { return n_; }

 protected:
  double do_value(const Vector& x) const override { return value_(x); }
  Vector do_subgradient(const Vector& x) const override { return subgradient_(x); }

 private:
  Index n_;
  ValueFn value_;
  SubgradientFn subgradient_;
};

}  // namespace nsbench
