#include "nsbench/kit/aggregation.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "nsbench/errors.hpp"

namespace nsbench::kit {

AggregateResult aggregate_three(const std::array<WeightedSubgradient, 3>& pairs, const MetricMap& metric) {
  const Index n = pairs[0].xi.size();
  for (const auto& p : pairs) {
    NSBENCH_REQUIRE(p.xi.size() == n, "aggregate_three: subgradients differ in dimension");
    NSBENCH_REQUIRE(p.beta >= 0.0, "aggregate_three: negative locality measure");
  }

  std::array<Vector, 3> mapped;
  for (int i = 0; i < 3; ++i) mapped[i] = metric(pairs[i].xi);
  Eigen::Matrix3d q;
  Eigen::Vector3d beta;
  for (int i = 0; i < 3; ++i) {
    beta[i] = pairs[i].beta;
    for (int j = 0; j < 3; ++j) q(i, j) = 0.5 * (pairs[i].xi.dot(mapped[j]) + pairs[j].xi.dot(mapped[i]));
  }

  auto phi = [&](const Eigen::Vector3d& l) { return l.dot(q * l) + 2.0 * beta.dot(l); };

  Eigen::Vector3d best = Eigen::Vector3d::Unit(0);
  double best_phi = phi(best);
  auto consider = [&](const Eigen::Vector3d& l) {
    const double v = phi(l);
    if (v < best_phi) {
      best_phi = v;
      best = l;
    }
  };

  for (int i = 1; i < 3; ++i) consider(Eigen::Vector3d::Unit(i));

  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double curvature = q(i, i) - 2.0 * q(i, j) + q(j, j);
      if (curvature <= 0.0) continue;
      const double t = (q(i, i) - q(i, j) + beta[i] - beta[j]) / curvature;
      if (t > 0.0 && t < 1.0) {
        Eigen::Vector3d l = Eigen::Vector3d::Zero();
        l[i] = 1.0 - t;
        l[j] = t;
        consider(l);
      }
    }
  }

  Eigen::Matrix4d kkt = Eigen::Matrix4d::Zero();
  kkt.topLeftCorner<3, 3>() = 2.0 * q;
  kkt.block<3, 1>(0, 3).setOnes();
  kkt.block<1, 3>(3, 0).setOnes();
  Eigen::Vector4d rhs;
  rhs << -2.0 * beta, 1.0;
  Eigen::FullPivLU<Eigen::Matrix4d> lu(kkt);
  if (lu.isInvertible()) {
    const Eigen::Vector4d sol = lu.solve(rhs);
    const Eigen::Vector3d l = sol.head<3>();
    if ((l.array() > 0.0).all() && l.allFinite()) consider(l / l.sum());
  }

  AggregateResult out;
  out.lambda.weights = best;
  out.pair.xi = best[0] * pairs[0].xi + best[1] * pairs[1].xi + best[2] * pairs[2].xi;
  out.pair.beta = best.dot(beta);
  out.phi = best_phi;
  return out;
}

double locality_measure(double f_x, double f_y, const Vector& xi, const Vector& x, const Vector& y, double gamma) {
  NSBENCH_REQUIRE(gamma >= 0.0, "locality_measure: gamma must be nonnegative");
  NSBENCH_REQUIRE(xi.size() == x.size() && x.size() == y.size(), "locality_measure: dimension mismatch");
  const Vector diff = x - y;
  return std::max(std::abs(f_x - f_y - xi.dot(diff)), gamma * diff.squaredNorm());
}

}  // namespace nsbench::kit
