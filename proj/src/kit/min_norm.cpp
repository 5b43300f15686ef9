#include "nsbench/kit/min_norm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "nsbench/errors.hpp"

namespace nsbench::kit {

bool SimplexWeights::valid(double tol) const {
  if (weights.size() == 0) return false;
  if ((weights.array() < 0.0).any()) return false;
  return std::abs(weights.sum() - 1.0) <= tol;
}

namespace {

// Minimizer of ||sum_i a_i p_i|| over the affine hull of the points in `set`
// (sum a_i = 1), from the Gram matrix.
Vector affine_minimizer(const Matrix& gram, const std::vector<Index>& set) {
  const Index k = static_cast<Index>(set.size());
  if (k == 2) {
    // Closed form; exact for symmetric pairs such as the two slopes of |t|.
    const double g00 = gram(set[0], set[0]);
    const double g01 = gram(set[0], set[1]);
    const double g11 = gram(set[1], set[1]);
    const double denom = g00 - 2.0 * g01 + g11;
    if (denom > 0.0) {
      const double a0 = (g11 - g01) / denom;
      return Vector{{a0, 1.0 - a0}};
    }
  }
  Matrix kkt = Matrix::Zero(k + 1, k + 1);
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) kkt(a, b) = gram(set[a], set[b]);
    kkt(a, k) = 1.0;
    kkt(k, a) = 1.0;
  }
  Vector rhs = Vector::Zero(k + 1);
  rhs[k] = 1.0;
  const Vector sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  Vector alpha = sol.head(k);
  alpha /= alpha.sum();
  return alpha;
}

}  // namespace

MinNormPoint min_norm_convex_hull(std::span<const Vector> points) {
  NSBENCH_REQUIRE(!points.empty(), "min_norm_convex_hull: empty point set");
  const Index count = static_cast<Index>(points.size());
  const Index n = points.front().size();
  Matrix p(n, count);
  for (Index i = 0; i < count; ++i) {
    NSBENCH_REQUIRE(points[i].size() == n, "min_norm_convex_hull: points differ in dimension");
    p.col(i) = points[i];
  }
  const Matrix gram = p.transpose() * p;
  const double scale = std::max(gram.diagonal().maxCoeff(), std::numeric_limits<double>::min());
  const double opt_tol = 1e-12 * scale;
  constexpr double kDropTol = 1e-14;

  Index start;
  gram.diagonal().minCoeff(&start);
  std::vector<Index> set{start};
  Vector lambda = Vector::Ones(1);

  auto full_weights = [&]() {
    Vector w = Vector::Zero(count);
    for (std::size_t a = 0; a < set.size(); ++a) w[set[a]] = lambda[static_cast<Index>(a)];
    return w;
  };

  const int max_major = 50 * static_cast<int>(count) + 100;
  for (int major = 0; major < max_major; ++major) {
    const Vector w = full_weights();
    const Vector inner = gram * w;  // x' p_j
    const double norm2 = w.dot(inner);
    Index entering;
    const double min_inner = inner.minCoeff(&entering);
    if (norm2 - min_inner <= opt_tol) break;
    if (std::find(set.begin(), set.end(), entering) != set.end()) break;

    set.push_back(entering);
    lambda.conservativeResize(lambda.size() + 1);
    lambda[lambda.size() - 1] = 0.0;

    // Minor cycle: move toward the affine minimizer while it leaves the simplex.
    for (std::size_t minor = 0; minor <= static_cast<std::size_t>(count) + 1; ++minor) {
      const Vector alpha = affine_minimizer(gram, set);
      if ((alpha.array() > kDropTol).all()) {
        lambda = alpha;
        break;
      }
      double theta = 1.0;
      for (Index a = 0; a < alpha.size(); ++a) {
        if (alpha[a] <= kDropTol) {
          const double denom = lambda[a] - alpha[a];
          if (denom > 0.0) theta = std::min(theta, lambda[a] / denom);
        }
      }
      lambda = lambda + theta * (alpha - lambda);
      std::vector<Index> kept_set;
      std::vector<double> kept_lambda;
      for (Index a = 0; a < lambda.size(); ++a) {
        if (lambda[a] > kDropTol) {
          kept_set.push_back(set[static_cast<std::size_t>(a)]);
          kept_lambda.push_back(lambda[a]);
        }
      }
      if (kept_set.empty()) {
        // Numerical breakdown; keep the entering point alone.
        kept_set = {entering};
        kept_lambda = {1.0};
      }
      set = std::move(kept_set);
      lambda = Eigen::Map<Vector>(kept_lambda.data(), static_cast<Index>(kept_lambda.size()));
      lambda /= lambda.sum();
    }
  }

  MinNormPoint out;
  out.lambda.weights = full_weights();
  out.point = p * out.lambda.weights;
  return out;
}

}  // namespace nsbench::kit
