#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "nsbench/errors.hpp"
#include "nsbench/kit/aggregation.hpp"
#include "nsbench/kit/limited_memory.hpp"
#include "nsbench/kit/line_search.hpp"
#include "nsbench/kit/min_norm.hpp"
#include "nsbench/piecewise.hpp"
#include "nsbench/problems.hpp"
#include "support/oracles.hpp"

using namespace nsbench;
using namespace nsbench::kit;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

Vector simplex_sample(oracle::TestRng& rng, Index k) {
  Vector l(k);
  for (Index i = 0; i < k; ++i) l[i] = -std::log(rng.uniform() + 1e-300);
  return l / l.sum();
}

MetricMap identity() {
  return [](const Vector& v) { return v; };
}

ObjectivePtr square1() {
  return std::make_shared<QuadraticObjective>(2.0 * Matrix::Identity(1, 1), Vector::Zero(1));
}

}  // namespace

TEST_CASE("min-norm point examples") {
  std::vector<Vector> pts{vec({1.0, 0.0}), vec({0.0, 1.0})};
  const MinNormPoint r = min_norm_convex_hull(pts);
  CHECK(r.point.isApprox(vec({0.5, 0.5}), 1e-12));
  CHECK(r.lambda.weights.isApprox(vec({0.5, 0.5}), 1e-12));
  CHECK(r.lambda.valid());

  std::vector<Vector> scalars{vec({2.0}), vec({-1.0})};
  const MinNormPoint z = min_norm_convex_hull(scalars);
  CHECK(std::abs(z.point[0]) <= 1e-12);
  CHECK(z.lambda.weights[0] == doctest::Approx(1.0 / 3.0));

  std::vector<Vector> one{vec({3.0, -4.0})};
  CHECK(min_norm_convex_hull(one).point == vec({3.0, -4.0}));

  std::vector<Vector> none;
  CHECK_THROWS_AS(min_norm_convex_hull(none), ContractViolation);
  std::vector<Vector> mixed{vec({1.0}), vec({1.0, 2.0})};
  CHECK_THROWS_AS(min_norm_convex_hull(mixed), ContractViolation);
}

TEST_CASE("min-norm point against the simplex grid") {
  oracle::TestRng rng(12);
  for (int inst = 0; inst < 3; ++inst) {
    std::vector<Vector> pts;
    for (int i = 0; i < 5; ++i) pts.push_back(rng.normal_vec(3) + vec({1.0, 0.5, 0.0}));
    const MinNormPoint r = min_norm_convex_hull(pts);
    CHECK(r.lambda.valid());
    const double grid = oracle::grid_min_norm(pts, 100);
    CHECK(r.point.norm() <= grid + 1e-4);
    // Optimality: no vertex improves on the returned point.
    for (const auto& p : pts) CHECK(p.dot(r.point) >= r.point.squaredNorm() - 1e-10);
    for (int s = 0; s < 1000; ++s) {
      const Vector l = simplex_sample(rng, 5);
      Vector combo = Vector::Zero(3);
      for (int i = 0; i < 5; ++i) combo += l[i] * pts[static_cast<std::size_t>(i)];
      CHECK(r.point.norm() <= combo.norm() + 1e-12);
    }
  }
}

TEST_CASE("min-norm point with degenerate and many points") {
  oracle::TestRng rng(5);
  std::vector<Vector> pts;
  for (int i = 0; i < 21; ++i) pts.push_back(rng.normal_vec(10) + 3.0 * Vector::Ones(10));
  pts.push_back(pts[0]);
  pts.push_back(0.5 * (pts[1] + pts[2]));
  const MinNormPoint r = min_norm_convex_hull(pts);
  CHECK(r.lambda.valid());
  for (const auto& p : pts) CHECK(p.dot(r.point) >= r.point.squaredNorm() - 1e-9);
}

TEST_CASE("aggregation examples") {
  const std::array<WeightedSubgradient, 3> same{WeightedSubgradient{vec({1.0, 2.0}), 0.3},
                                                WeightedSubgradient{vec({1.0, 2.0}), 0.3},
                                                WeightedSubgradient{vec({1.0, 2.0}), 0.3}};
  const AggregateResult a = aggregate_three(same, identity());
  CHECK(a.pair.xi.isApprox(vec({1.0, 2.0})));
  CHECK(a.pair.beta == doctest::Approx(0.3));

  const std::array<WeightedSubgradient, 3> cancel{WeightedSubgradient{vec({1.0}), 0.0},
                                                  WeightedSubgradient{vec({-1.0}), 0.0},
                                                  WeightedSubgradient{vec({1.0}), 0.0}};
  const AggregateResult c = aggregate_three(cancel, identity());
  CHECK(std::abs(c.pair.xi[0]) <= 1e-12);
  CHECK(std::abs(c.phi) <= 1e-12);
  CHECK(c.lambda.valid());

  const std::array<WeightedSubgradient, 3> negative{WeightedSubgradient{vec({1.0}), -0.1},
                                                    WeightedSubgradient{vec({-1.0}), 0.0},
                                                    WeightedSubgradient{vec({1.0}), 0.0}};
  CHECK_THROWS_AS(aggregate_three(negative, identity()), ContractViolation);
}

TEST_CASE("aggregation against the simplex grid") {
  oracle::TestRng rng(31);
  for (int inst = 0; inst < 10; ++inst) {
    Matrix m(4, 4);
    for (Index i = 0; i < 16; ++i) m.data()[i] = rng.normal();
    const Matrix d = m * m.transpose() + 0.1 * Matrix::Identity(4, 4);
    std::vector<Vector> xi;
    Vector beta(3);
    std::array<WeightedSubgradient, 3> pairs;
    for (int i = 0; i < 3; ++i) {
      xi.push_back(rng.normal_vec(4));
      beta[i] = std::abs(rng.normal());
      pairs[static_cast<std::size_t>(i)] = {xi.back(), beta[i]};
    }
    const AggregateResult r = aggregate_three(pairs, [&](const Vector& v) { return Vector(d * v); });
    CHECK(r.lambda.valid());
    const double at = oracle::phi(xi, beta, d, r.lambda.weights);
    CHECK(r.phi == doctest::Approx(at).epsilon(1e-10));
    CHECK(at <= oracle::grid_min_phi(xi, beta, d, 200) + 1e-4);
    for (int v = 0; v < 3; ++v) CHECK(at <= oracle::phi(xi, beta, d, Vector::Unit(3, v)) + 1e-12);
    CHECK(r.pair.beta >= 0.0);
    CHECK(r.pair.beta == doctest::Approx(beta.dot(r.lambda.weights)));
  }
}

TEST_CASE("locality measure") {
  CHECK(locality_measure(1.0, 1.0, vec({3.0}), vec({2.0}), vec({2.0}), 0.5) == 0.0);
  CHECK(locality_measure(0.0, 1.0, vec({2.0}), vec({0.0}), vec({1.0}), 0.0) == 1.0);
  oracle::TestRng rng(17);
  auto cubic = [](double t) { return t * t * t - 2.0 * t; };
  for (int i = 0; i < 20; ++i) {
    const double x = rng.normal();
    const double y = rng.normal();
    const double xi = 3.0 * y * y - 2.0;
    const double expect = std::max(std::abs(cubic(x) - cubic(y) - xi * (x - y)), 0.5 * (x - y) * (x - y));
    const double got = locality_measure(cubic(x), cubic(y), vec({xi}), vec({x}), vec({y}), 0.5);
    CHECK(got == doctest::Approx(expect).epsilon(1e-14));
    CHECK(got >= 0.0);
  }
}

TEST_CASE("line search examples") {
  auto sq = square1();
  const LineSearchOutcome a = nonsmooth_line_search(*sq, vec({1.0}), vec({-1.0}), 1.0);
  CHECK(a.kind == StepKind::serious);
  CHECK(a.t == 1.0);
  CHECK(a.point[0] == 0.0);
  CHECK(a.value == 0.0);

  PiecewiseLinear abs({abs_term(vec({1.0}), 0.0)});
  const LineSearchOutcome b = nonsmooth_line_search(abs, vec({0.0}), vec({1.0}), 1.0);
  CHECK(b.kind == StepKind::null);
  CHECK(b.subgradient[0] == 1.0);
  CHECK(-b.locality + b.subgradient[0] * 1.0 >= -0.25);

  PiecewisePieces kink;
  kink.pieces = {{vec({-1.0}), 0.0}, {vec({2.0}), 0.0}};
  PiecewiseLinear f({kink});
  const LineSearchOutcome c = nonsmooth_line_search(f, vec({1.0}), vec({-1.0}), 2.0);
  CHECK(c.kind == StepKind::serious);
  CHECK(f.value(vec({1.0})) == 2.0);
  CHECK(c.value == 0.0);
  CHECK(c.value <= 2.0 - 1e-4 * c.t * 2.0);
}

TEST_CASE("line search limits and failure") {
  PiecewiseLinear abs({abs_term(vec({1.0}), 0.0)});
  LineSearchParams p;
  p.max_trials = 1;
  CHECK_THROWS_AS(nonsmooth_line_search(abs, vec({0.0}), vec({1.0}), 1.0, p), LineSearchFailure);
  CHECK_THROWS_AS(nonsmooth_line_search(abs, vec({0.0}), vec({0.0}), 1.0), ContractViolation);
  CHECK_THROWS_AS(nonsmooth_line_search(abs, vec({0.0}), vec({1.0}), 0.0), ContractViolation);

  // Counted oracle: never more than max_trials evaluations.
  ObjectiveOracle counted(abs);
  LineSearchParams q;
  q.max_trials = 7;
  nonsmooth_line_search(counted, vec({1.0}), 1.0, vec({-0.001}), 0.001, q);
  CHECK(counted.counts().values <= 7);
}

TEST_CASE("serious line search steps strictly decrease") {
  oracle::TestRng rng(44);
  MaxQ maxq(5);
  for (int i = 0; i < 50; ++i) {
    const Vector x = rng.normal_vec(5);
    const Vector g = maxq.subgradient(x);
    if (g.norm() == 0.0) continue;
    const Vector d = -g + 0.3 * rng.normal_vec(5);
    try {
      const LineSearchOutcome r = nonsmooth_line_search(maxq, x, d, g.squaredNorm());
      if (r.kind == StepKind::serious) {
        CHECK(r.t > 0.0);
        CHECK(r.value < maxq.value(x));
      } else {
        CHECK(r.locality >= 0.0);
        CHECK(-r.locality + r.subgradient.dot(d) >= -0.25 * g.squaredNorm());
      }
    } catch (const LineSearchFailure&) {
    }
  }
}

TEST_CASE("limited memory examples") {
  LimitedMemory empty(2);
  CHECK(lm_apply(empty, vec({3.0, -1.0})) == vec({3.0, -1.0}));
  CHECK_THROWS_AS(lm_apply(empty, vec({1.0})), ContractViolation);

  const LimitedMemory one = lm_update(LimitedMemory(1), vec({1.0}), vec({1.0}), StepKind::serious);
  CHECK(one.pairs().size() == 1);
  CHECK(lm_apply(one, vec({2.5}))[0] == doctest::Approx(2.5));

  const LimitedMemory skipped = lm_update(LimitedMemory(2), vec({1.0, 0.0}), vec({-1.0, 0.0}), StepKind::serious);
  CHECK(skipped.empty());
  CHECK(skipped.skipped() == 1);

  LimitedMemoryParams cap2;
  cap2.capacity = 2;
  LimitedMemory m(2, cap2);
  m = lm_update(m, vec({1.0, 0.0}), vec({2.0, 0.0}), StepKind::serious);
  m = lm_update(m, vec({0.0, 1.0}), vec({0.0, 3.0}), StepKind::serious);
  m = lm_update(m, vec({1.0, 1.0}), vec({2.0, 3.0}), StepKind::serious);
  REQUIRE(m.pairs().size() == 2);
  CHECK(m.pairs()[0].s == vec({0.0, 1.0}));
  CHECK(m.pairs()[1].s == vec({1.0, 1.0}));
}

TEST_CASE("limited memory matches the dense recursive metric") {
  oracle::TestRng rng(8);
  const int n = 6;
  Matrix a(n, n);
  for (Index i = 0; i < n * n; ++i) a.data()[i] = rng.normal();
  const Matrix h = a * a.transpose() + Matrix::Identity(n, n);

  LimitedMemory mem(n);
  std::vector<oracle::DensePair> dense;
  for (int k = 0; k < 5; ++k) {
    const Vector s = rng.normal_vec(n);
    const Vector u = h * s;
    mem = lm_update(mem, s, u, StepKind::serious);
    dense.push_back({s, u, false, true});
  }
  REQUIRE(mem.pairs().size() == 5);
  const double gamma = dense.back().s.dot(dense.back().u) / dense.back().u.squaredNorm();
  const Matrix d = oracle::dense_inverse_metric(n, gamma, dense);
  for (int i = 0; i < 10; ++i) {
    const Vector v = rng.normal_vec(n);
    const Vector expect = d * v;
    CHECK((lm_apply(mem, v) - expect).norm() <= 1e-8 * expect.norm());
  }
  for (int i = 0; i < 100; ++i) {
    const Vector v = rng.normal_vec(n);
    CHECK(v.dot(lm_apply(mem, v)) > 0.0);
  }

  // Mixed with SR1 pairs: activity decided on the dense matrix.
  LimitedMemory mixed = mem;
  std::vector<oracle::DensePair> dense_mixed = dense;
  for (int k = 0; k < 2; ++k) {
    const Vector s = rng.normal_vec(n);
    const Vector u = h * s + 0.1 * rng.normal_vec(n);
    const LimitedMemory next = lm_update(mixed, s, u, StepKind::null);
    const Matrix dm = oracle::dense_inverse_metric(n, gamma, dense_mixed);
    const Vector r = s - dm * u;
    const bool accept = u.dot(r) > 1e-8 * u.norm() * r.norm();
    CHECK(accept == (next.skipped() == mixed.skipped()));
    if (accept) {
      dense_mixed.push_back({s, u, true, true});
      if (dense_mixed.size() > mixed.params().capacity) dense_mixed.erase(dense_mixed.begin());
    }
    mixed = next;
  }
  for (std::size_t i = 0; i < mixed.pairs().size(); ++i) dense_mixed[i].active = mixed.pair_active(i);
  const double g2 = [&] {
    for (std::size_t j = dense_mixed.size(); j-- > 0;)
      if (!dense_mixed[j].sr1) return dense_mixed[j].s.dot(dense_mixed[j].u) / dense_mixed[j].u.squaredNorm();
    return 1.0;
  }();
  const Matrix dmix = oracle::dense_inverse_metric(n, g2, dense_mixed);
  for (int i = 0; i < 10; ++i) {
    const Vector v = rng.normal_vec(n);
    const Vector expect = dmix * v;
    CHECK((lm_apply(mixed, v) - expect).norm() <= 1e-8 * expect.norm());
  }
}

TEST_CASE("secant condition after a serious update") {
  oracle::TestRng rng(23);
  const int n = 5;
  LimitedMemory mem(n);
  for (int k = 0; k < 4; ++k) {
    const Vector s = rng.normal_vec(n);
    Vector u = s + 0.2 * rng.normal_vec(n);
    if (s.dot(u) <= 0.0) u = s;
    mem = lm_update(mem, s, u, StepKind::serious);
    // Dense D from columns, then B = inverse(D).
    Matrix d(n, n);
    for (int j = 0; j < n; ++j) d.col(j) = lm_apply(mem, Vector::Unit(n, j));
    const Matrix b = d.inverse();
    CHECK((b * s - u).norm() <= 1e-8 * std::max(1.0, u.norm()));
  }
}

TEST_CASE("SR1 null updates keep the metric positive definite") {
  oracle::TestRng rng(90);
  const int n = 4;
  LimitedMemory mem(n);
  mem = lm_update(mem, rng.normal_vec(n), Vector::Ones(n), StepKind::serious);
  for (int k = 0; k < 30; ++k) mem = lm_update(mem, rng.normal_vec(n), rng.normal_vec(n), StepKind::null);
  CHECK(mem.pairs().size() <= mem.params().capacity);
  for (int i = 0; i < 100; ++i) {
    const Vector v = rng.normal_vec(n);
    CHECK(v.dot(lm_apply(mem, v)) > 0.0);
  }
}
