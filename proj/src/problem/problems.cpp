#include "nsbench/problems.hpp"

#include <cmath>
#include <limits>

#include "nsbench/errors.hpp"
#include "nsbench/kit/min_norm.hpp"

namespace nsbench {

QuadraticObjective::QuadraticObjective(Matrix hessian, Vector linear, double offset)
    : hessian_(std::move(hessian)), linear_(std::move(linear)), offset_(offset) {
  NSBENCH_REQUIRE(linear_.size() > 0, "QuadraticObjective: empty dimension");
  NSBENCH_REQUIRE(hessian_.rows() == linear_.size() && hessian_.cols() == linear_.size(),
                  "QuadraticObjective: Hessian shape does not match the linear term");
}

double QuadraticObjective::do_value(const Vector& x) const {
  return 0.5 * x.dot(hessian_ * x) + linear_.dot(x) + offset_;
}

Vector QuadraticObjective::do_subgradient(const Vector& x) const { return hessian_ * x + linear_; }

std::optional<double> QuadraticObjective::directional_derivative(const Vector& x, const Vector& d) const {
  check_dimension(*this, x);
  check_dimension(*this, d);
  return do_subgradient(x).dot(d);
}

double QuadraticObjective::value_flops() const {
  const double n = static_cast<double>(dimension());
  return 2.0 * n * n + 4.0 * n;
}

double QuadraticObjective::subgradient_flops() const {
  const double n = static_cast<double>(dimension());
  return 2.0 * n * n + 2.0 * n;
}

MaxQ::MaxQ(Index n) : n_(n) { NSBENCH_REQUIRE(n > 0, "MaxQ: dimension must be positive"); }

Vector MaxQ::standard_start(Index n) {
  Vector x(n);
  for (Index i = 0; i < n; ++i) {
    const double v = static_cast<double>(i + 1);
    x[i] = (i + 1) <= n / 2 ? v : -v;
  }
  return x;
}

double MaxQ::do_value(const Vector& x) const { return x.array().square().maxCoeff(); }

std::vector<Index> MaxQ::active(const Vector& x) const {
  const double top = x.array().square().maxCoeff();
  std::vector<Index> idx;
  for (Index i = 0; i < n_; ++i) {
    if (x[i] * x[i] >= top) idx.push_back(i);
  }
  return idx;
}

Vector MaxQ::do_subgradient(const Vector& x) const {
  const auto idx = active(x);
  if (idx.size() == 1) {
    Vector g = Vector::Zero(n_);
    g[idx[0]] = 2.0 * x[idx[0]];
    return g;
  }
  std::vector<Vector> grads;
  grads.reserve(idx.size());
  for (Index i : idx) {
    Vector g = Vector::Zero(n_);
    g[i] = 2.0 * x[i];
    grads.push_back(std::move(g));
  }
  return kit::min_norm_convex_hull(grads).point;
}

std::optional<double> MaxQ::directional_derivative(const Vector& x, const Vector& d) const {
  check_dimension(*this, x);
  check_dimension(*this, d);
  double best = -std::numeric_limits<double>::infinity();
  for (Index i : active(x)) best = std::max(best, 2.0 * x[i] * d[i]);
  return best;
}

bool MaxQ::differentiable_at(const Vector& x) const {
  const auto idx = active(x);
  if (idx.size() <= 1) return true;
  // Ties only matter when the competing gradients differ.
  for (Index i : idx) {
    if (x[i] != 0.0) return false;
  }
  return true;
}

FunctionObjective::FunctionObjective(Index n, ValueFn value, SubgradientFn subgradient)
    : n_(n), value_(std::move(value)), subgradient_(std::move(subgradient)) {
  NSBENCH_REQUIRE(n > 0, "FunctionObjective: dimension must be positive");
  NSBENCH_REQUIRE(value_ && subgradient_, "FunctionObjective: missing callable");
}

}  // namespace nsbench
