#pragma once

#include <vector>

#include "nsbench/objective.hpp"

namespace nsbench {

struct AffinePiece {
  Vector a;
  double b = 0.0;

  double at(const Vector& x) const { return a.dot(x) + b; }
};

enum class Combiner { max, min };

// max_i or min_i of a'_i x + b_i over at least one piece.
struct PiecewisePieces {
  std::vector<AffinePiece> pieces;
  Combiner combiner = Combiner::max;

  Index dimension() const;
  void validate() const;
};

// Sum of max/min-of-affine terms plus a constant. Subgradients, one-sided
// directional derivatives and the kink test are exact by enumeration of the
// active pieces.
class PiecewiseLinear final : public Objective {
 public:
  explicit PiecewiseLinear(std::vector<PiecewisePieces> terms, double constant = 0.0);

  Index dimension() const override { return dimension_; }
  std::optional<double> directional_derivative(const Vector& x, const Vector& d) const override;
  bool differentiable_at(const Vector& x) const override;
  double value_flops() const override;
  double subgradient_flops() const override { return value_flops(); }

  const std::vector<PiecewisePieces>& terms() const { return terms_; }

 protected:
  double do_value(const Vector& x) const override;
  Vector do_subgradient(const Vector& x) const override;

 private:
  std::vector<PiecewisePieces> terms_;
  double constant_;
  Index dimension_;
};

// weight * |a'x + b| as a single term (max of the two signs for weight >= 0,
// min for weight < 0).
PiecewisePieces abs_term(const Vector& a, double b, double weight = 1.0);

// max(0, a'x + b).
PiecewisePieces relu_term(const Vector& a, double b);

}  // namespace nsbench
