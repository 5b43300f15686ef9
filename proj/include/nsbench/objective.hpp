#pragma once

#include <memory>
#include <optional>

#include "nsbench/types.hpp"

namespace nsbench {

struct Evaluation {
  double value = 0.0;
  Vector subgradient;
};

// A locally Lipschitz function on R^n together with a deterministic subgradient
// oracle. Public entry points validate dimensions and finiteness, derived
// classes implement the do_* hooks.
//
// At kinks the oracle follows one fixed tie rule: max(0, t) and |t| contribute
// zero at t = 0, and piecewise maxima return the minimum-norm element of the
// hull of their active pieces.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual Index dimension() const = 0;

  double value(const Vector& x) const;
  Vector subgradient(const Vector& x) const;
  Evaluation evaluate(const Vector& x) const;

  // Exact one-sided directional derivative f'(x; d) when the function knows it.
  virtual std::optional<double> directional_derivative(const Vector& x, const Vector& d) const;

  // False only when x is known to sit on a kink.
  virtual bool differentiable_at(const Vector& x) const;

  // Number of independently evaluable parts; one oracle call costs this many
  // component evaluations.
  virtual std::size_t component_count() const { return 1; }

  // Approximate floating point work of one call, used by the work clock.
  virtual double value_flops() const;
  virtual double subgradient_flops() const;

 protected:
  virtual double do_value(const Vector& x) const = 0;
  virtual Vector do_subgradient(const Vector& x) const = 0;
  virtual Evaluation do_evaluate(const Vector& x) const;
};

using ObjectivePtr = std::shared_ptr<const Objective>;

void check_dimension(const Objective& obj, const Vector& x);

// F(x) + weight * ||x||_1, subgradient adds weight * sign(x) with sign(0) = 0.
ObjectivePtr add_l1(ObjectivePtr obj, double weight);

}  // namespace nsbench
