#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "nsbench/batch.hpp"
#include "nsbench/catalog.hpp"
#include "nsbench/clock.hpp"
#include "nsbench/errors.hpp"
#include "nsbench/oracle.hpp"
#include "nsbench/piecewise.hpp"
#include "nsbench/problems.hpp"
#include "nsbench/relu_net.hpp"
#include "nsbench/stationarity.hpp"
#include "support/oracles.hpp"

using namespace nsbench;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

ObjectivePtr squared_norm(Index n) {
  return std::make_shared<QuadraticObjective>(2.0 * Matrix::Identity(n, n), Vector::Zero(n));
}

ObjectivePtr abs1() { return std::make_shared<PiecewiseLinear>(std::vector<PiecewisePieces>{abs_term(vec({1.0}), 0.0)}); }

ObjectivePtr affine(const Vector& a, double b) {
  return std::make_shared<FunctionObjective>(
      a.size(), [a, b](const Vector& x) { return a.dot(x) + b; }, [a](const Vector&) { return a; });
}

// 2|x1 + x2| - |x1 - x2|
ObjectivePtr cb_core() {
  return std::make_shared<PiecewiseLinear>(
      std::vector<PiecewisePieces>{abs_term(vec({1.0, 1.0}), 0.0, 2.0), abs_term(vec({1.0, -1.0}), 0.0, -1.0)});
}

}  // namespace

TEST_CASE("value of simple objectives") {
  CHECK(squared_norm(2)->value(vec({1.0, 2.0})) == doctest::Approx(5.0).epsilon(1e-15));
  MaxQ maxq(3);
  CHECK(maxq.value(vec({1.0, -2.0, 0.5})) == 4.0);
  PiecewiseLinear unit({relu_term(vec({1.0, -1.0}), 0.0)});
  CHECK(unit.value(vec({3.0, 1.0})) == 2.0);
  CHECK(unit.value(vec({1.0, 3.0})) == 0.0);
}

TEST_CASE("dimension mismatch is a contract violation") {
  auto q = squared_norm(2);
  CHECK_THROWS_AS(q->value(vec({1.0, 2.0, 3.0})), ContractViolation);
  CHECK_THROWS_AS(q->subgradient(vec({1.0})), ContractViolation);
  CHECK_THROWS_AS(MaxQ(3).evaluate(vec({1.0})), ContractViolation);
}

TEST_CASE("non-finite subgradient is a numerical domain error") {
  FunctionObjective bad(
      1, [](const Vector&) { return 0.0; }, [](const Vector&) { return vec({std::nan("")}); });
  CHECK_THROWS_AS(bad.subgradient(vec({0.0})), NumericalDomainError);
  FunctionObjective bad_value(
      1, [](const Vector&) { return INFINITY; }, [](const Vector&) { return vec({0.0}); });
  CHECK_THROWS_AS(bad_value.value(vec({0.0})), NumericalDomainError);
}

TEST_CASE("subgradients and the tie rule") {
  CHECK(squared_norm(2)->subgradient(vec({1.0, 2.0})).isApprox(vec({2.0, 4.0})));
  CHECK(abs1()->subgradient(vec({0.0}))[0] == 0.0);
  CHECK(abs1()->subgradient(vec({-0.5}))[0] == -1.0);
  PiecewiseLinear relu({relu_term(vec({1.0}), 0.0)});
  CHECK(relu.subgradient(vec({0.0}))[0] == 0.0);
  CHECK(relu.subgradient(vec({1e-9}))[0] == 1.0);
  CHECK_FALSE(relu.differentiable_at(vec({0.0})));
  CHECK(relu.differentiable_at(vec({0.1})));

  // A tie of MaxQ takes the minimum-norm element of the active hull.
  MaxQ maxq(2);
  const Vector g = maxq.subgradient(vec({1.0, -1.0}));
  CHECK(g[0] == doctest::Approx(1.0));
  CHECK(g[1] == doctest::Approx(-1.0));
  const Vector g2 = maxq.subgradient(vec({1.0, 1.0}));
  CHECK(g2[0] == doctest::Approx(1.0));
  CHECK(g2[1] == doctest::Approx(1.0));
  CHECK(maxq.subgradient(vec({3.0, 1.0})).isApprox(vec({6.0, 0.0})));
}

TEST_CASE("smooth pieces match central finite differences") {
  oracle::TestRng rng(3);
  MaxQ maxq(6);
  auto cb = cb_core();
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = rng.normal_vec(6);
    const Vector fd = oracle::central_difference([&](const Vector& y) { return maxq.value(y); }, x, 1e-6);
    CHECK((maxq.subgradient(x) - fd).norm() <= 1e-5 * fd.norm());
    const Vector y = rng.normal_vec(2);
    if (std::abs(y[0] + y[1]) > 1e-3 && std::abs(y[0] - y[1]) > 1e-3) {
      const Vector fd2 = oracle::central_difference([&](const Vector& z) { return cb->value(z); }, y, 1e-6);
      CHECK((cb->subgradient(y) - fd2).norm() <= 1e-5 * fd2.norm());
    }
  }
}

TEST_CASE("batch objective value is the mean of its components") {
  std::vector<ObjectivePtr> comps{
      std::make_shared<QuadraticObjective>(2.0 * Matrix::Identity(1, 1), Vector::Zero(1)),  // x^2
      affine(vec({4.0}), 0.0)};
  BatchObjective b(comps);
  CHECK(b.size() == 2);
  CHECK(b.value(vec({1.0})) == doctest::Approx(2.5));
  CHECK(averaged_full_gradient(b, vec({1.0}))[0] == doctest::Approx(3.0));
  CHECK(b.component_count() == 2);

  auto single = as_batch(squared_norm(2));
  CHECK(averaged_full_gradient(*single, vec({1.0, -3.0})) == squared_norm(2)->subgradient(vec({1.0, -3.0})));
  CHECK_THROWS_AS(BatchObjective(std::vector<ObjectivePtr>{}), ContractViolation);
  CHECK_THROWS_AS(BatchObjective({squared_norm(2), squared_norm(3)}), ContractViolation);
  CHECK_THROWS_AS(averaged_full_gradient(b, vec({1.0, 2.0})), ContractViolation);
}

TEST_CASE("averaged gradient of 35 affine batches matches a loop-and-divide sum") {
  oracle::TestRng rng(11);
  const Index n = 7;
  std::vector<ObjectivePtr> comps;
  std::vector<Vector> slopes;
  for (int i = 0; i < 35; ++i) {
    slopes.push_back(rng.normal_vec(n));
    comps.push_back(affine(slopes.back(), rng.normal()));
  }
  BatchObjective b(comps);
  const Vector x = rng.normal_vec(n);
  Vector expect = Vector::Zero(n);
  for (Index j = 0; j < n; ++j) {
    double s = 0.0;
    for (const auto& a : slopes) s += a[j];
    expect[j] = s / 35.0;
  }
  CHECK((averaged_full_gradient(b, x) - expect).lpNorm<Eigen::Infinity>() <= 1e-15);
  CHECK((b.subgradient(x) - expect).lpNorm<Eigen::Infinity>() <= 1e-15);

  double mean = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) mean += b.component(i).value(x);
  mean /= 35.0;
  CHECK(std::abs(b.value(x) - mean) <= 1e-12 * std::max(1.0, std::abs(mean)));
}

TEST_CASE("random batch gradient") {
  Rng rng(5);
  auto single = as_batch(squared_norm(2));
  for (int i = 0; i < 10; ++i) CHECK(random_batch_gradient(*single, vec({1.0, 1.0}), rng).first == 0);

  oracle::TestRng data(2);
  std::vector<ObjectivePtr> comps;
  for (int i = 0; i < 35; ++i) comps.push_back(affine(data.normal_vec(3), 0.0));
  BatchObjective b(comps);
  const Vector x = data.normal_vec(3);
  for (int i = 0; i < 20; ++i) {
    auto [index, g] = random_batch_gradient(b, x, rng);
    CHECK(g == b.component(index).subgradient(x));
  }

  std::vector<int> hits(35, 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++hits[uniform_index(rng, 35)];
  const double p = 1.0 / 35.0;
  const double sd = std::sqrt(draws * p * (1.0 - p));
  for (int h : hits) CHECK(std::abs(h - draws * p) <= 3.0 * sd + 1.0);
}

TEST_CASE("relu net construction") {
  CHECK(relu_parameter_count({2, 3, 1}) == 13);

  ReluNetSpec spec;
  spec.widths = {2, 3, 1};
  spec.inputs = {vec({1.0, 2.0}), vec({-1.0, 0.5}), vec({0.0, 3.0}), vec({2.0, -2.0})};
  spec.targets = {1.0, -2.0, 0.5, 3.0};
  spec.batches = 2;
  CHECK(spec.parameter_count() == 13);
  auto net = build_relu_net(spec);
  CHECK(net->dimension() == 13);
  CHECK(net->size() == 2);
  CHECK(net->value(Vector::Zero(13)) == doctest::Approx((1.0 + 2.0 + 0.5 + 3.0) / 4.0));

  ReluNetSpec bad = spec;
  bad.targets.pop_back();
  CHECK_THROWS_AS(build_relu_net(bad), ContractViolation);
  bad = spec;
  bad.widths = {3, 3, 1};
  CHECK_THROWS_AS(build_relu_net(bad), ContractViolation);
  bad = spec;
  bad.widths = {2, 3, 2};
  CHECK_THROWS_AS(build_relu_net(bad), ContractViolation);
}

TEST_CASE("relu net matches a hand-computed forward pass") {
  // widths [2,2,1]; W1 = [[1,-1],[2,0]], b1 = [0,-1], W2 = [[1,-2]], b2 = [0.5]
  const std::vector<int> widths{2, 2, 1};
  Vector p(9);
  p << 1.0, 2.0, -1.0, 0.0, 0.0, -1.0, 1.0, -2.0, 0.5;
  ReluNetSpec spec;
  spec.widths = {2, 2, 1};
  spec.inputs = {vec({1.0, 1.0}), vec({2.0, -1.0}), vec({-1.0, 3.0})};
  spec.targets = {0.0, 1.0, -1.0};
  auto net = build_relu_net(spec);

  // Sample 1: h = relu([0, 1]) = [0, 1]; out = -2 + 0.5 = -1.5
  // Sample 2: h = relu([3, 3]) = [3, 3]; out = 3 - 6 + 0.5 = -2.5
  // Sample 3: h = relu([-4, -3]) = [0, 0]; out = 0.5
  CHECK(oracle::relu_forward(widths, p, spec.inputs[0]) == -1.5);
  CHECK(oracle::relu_forward(widths, p, spec.inputs[1]) == -2.5);
  CHECK(oracle::relu_forward(widths, p, spec.inputs[2]) == 0.5);
  const double expect = (1.5 + 3.5 + 1.5) / 3.0;
  CHECK(net->value(p) == doctest::Approx(expect).epsilon(1e-15));

  spec.loss = LossKind::squared;
  auto sq = build_relu_net(spec);
  CHECK(sq->value(p) == doctest::Approx((2.25 + 12.25 + 2.25) / 3.0).epsilon(1e-15));
}

TEST_CASE("relu net subgradient matches finite differences away from kinks") {
  SyntheticReluOptions opt;
  opt.width = 6;
  opt.layers = 3;
  opt.batches = 1;
  opt.samples_per_batch = 12;
  opt.seed = 9;
  for (LossKind loss : {LossKind::absolute, LossKind::squared}) {
    opt.loss = loss;
    auto net = build_relu_net(make_synthetic_relu_spec(opt));
    const auto& comp = dynamic_cast<const ReluBatchObjective&>(net->component(0));
    oracle::TestRng rng(4);
    int checked = 0;
    for (int attempt = 0; attempt < 200 && checked < 10; ++attempt) {
      const Vector x = relu_initial_point(synthetic_widths(opt.width, opt.layers), 100 + attempt) +
                       0.1 * rng.normal_vec(net->dimension());
      if (comp.kink_margin(x) < 1e-3) continue;
      ++checked;
      const Vector fd = oracle::central_difference([&](const Vector& y) { return net->value(y); }, x, 1e-6);
      const Vector g = net->subgradient(x);
      CHECK((g - fd).norm() <= 1e-5 * std::max(fd.norm(), 1e-12));
      CHECK(net->evaluate(x).subgradient == g);
      CHECK(net->evaluate(x).value == net->value(x));
    }
    CHECK(checked == 10);
  }
}

TEST_CASE("relu net is invariant under permuting samples within a batch") {
  SyntheticReluOptions opt;
  opt.width = 4;
  opt.layers = 2;
  opt.batches = 2;
  opt.samples_per_batch = 10;
  opt.seed = 21;
  ReluNetSpec spec = make_synthetic_relu_spec(opt);
  auto net = build_relu_net(spec);
  ReluNetSpec shuffled = spec;
  std::reverse(shuffled.inputs.begin(), shuffled.inputs.begin() + 10);
  std::reverse(shuffled.targets.begin(), shuffled.targets.begin() + 10);
  auto net2 = build_relu_net(shuffled);
  oracle::TestRng rng(8);
  for (int i = 0; i < 5; ++i) {
    const Vector x = rng.normal_vec(net->dimension());
    CHECK(net->value(x) == doctest::Approx(net2->value(x)).epsilon(1e-13));
  }
}

TEST_CASE("synthetic data is a pure function of the seed") {
  SyntheticReluOptions opt;
  opt.width = 4;
  opt.layers = 3;
  opt.batches = 3;
  opt.samples_per_batch = 5;
  opt.seed = 77;
  const ReluNetSpec a = make_synthetic_relu_spec(opt);
  const ReluNetSpec b = make_synthetic_relu_spec(opt);
  CHECK(a.targets == b.targets);
  CHECK(a.inputs.size() == 15);
  opt.seed = 78;
  CHECK(make_synthetic_relu_spec(opt).targets != a.targets);
  CHECK((synthetic_widths(16, 3) == std::vector<Index>{16, 16, 16, 1}));
}

TEST_CASE("problem catalog") {
  const Problem m = make_problem("maxq-20", 1);
  CHECK(m.objective->dimension() == 20);
  CHECK(m.objective->convex());
  CHECK(m.x0 == MaxQ::standard_start(20));
  CHECK(m.objective->value(m.x0) == 400.0);

  const Problem a = make_problem("abs", 1);
  CHECK(a.objective->value(a.x0) == 1.0);

  const Problem cb = make_problem("cb-pl", 1);
  CHECK(cb.x0 == Vector::Zero(2));
  CHECK_FALSE(cb.objective->convex());
  // Bounded below far from the origin.
  CHECK(cb.objective->value(vec({100.0, -100.0})) >= -10.0);
  CHECK(cb.objective->value(vec({1.0, -1.0})) == doctest::Approx(-2.0));

  const Problem r1 = make_problem("relunet-16-3-5", 42);
  const Problem r2 = make_problem("relunet-16-3-5", 42);
  CHECK(r1.objective->dimension() == 561);
  CHECK(r1.objective->size() == 5);
  CHECK(r1.objective->value(r1.x0) == r2.objective->value(r2.x0));
  CHECK(r1.objective->value(r1.x0) != make_problem("relunet-16-3-5", 43).objective->value(r1.x0));
  CHECK(dynamic_cast<const ReluBatchObjective&>(r1.objective->component(0)).sample_count() ==
        static_cast<Index>(kRelunetSamplesPerBatch));

  CHECK(is_known_problem("relunet-8-2-3"));
  CHECK_FALSE(is_known_problem("rosenbrock"));
  CHECK_FALSE(is_known_problem("maxq-0"));
  CHECK_THROWS_AS(make_problem("newton", 1), ConfigError);
}

TEST_CASE("stationarity report") {
  std::vector<Vector> dirs;
  for (int k = 0; k < 16; ++k) {
    const double t = 2.0 * M_PI * k / 16.0;
    dirs.push_back(vec({std::cos(t), std::sin(t)}));
  }

  auto l1 = std::make_shared<PiecewiseLinear>(
      std::vector<PiecewisePieces>{abs_term(vec({1.0, 0.0}), 0.0), abs_term(vec({0.0, 1.0}), 0.0)});
  const auto r1 = stationarity_report(*l1, Vector::Zero(2), dirs);
  CHECK(r1.coordinatewise == 0.0);
  CHECK(r1.directional >= 0.0);
  CHECK(r1.witness.norm() == doctest::Approx(1.0));

  dirs.push_back(vec({1.0, -1.0}));
  const auto r2 = stationarity_report(*cb_core(), Vector::Zero(2), dirs);
  CHECK(r2.coordinatewise == 0.0);
  CHECK(r2.directional == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(std::abs(r2.witness[0]) - std::sqrt(0.5)) < 1e-12);
  CHECK(r2.witness[0] * r2.witness[1] < 0.0);

  // Grid oracle over the four linear pieces: f(td) / t for tiny t.
  double grid_min = INFINITY;
  for (int k = 0; k < 3600; ++k) {
    const double t = 2.0 * M_PI * k / 3600.0;
    const double d1 = std::cos(t);
    const double d2 = std::sin(t);
    grid_min = std::min(grid_min, 2.0 * std::abs(d1 + d2) - std::abs(d1 - d2));
  }
  CHECK(grid_min == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-6));
  CHECK(r2.directional <= grid_min + 1e-12);

  Matrix h(2, 2);
  h << 3.0, 1.0, 1.0, 2.0;
  const Vector c = vec({1.0, -1.0});
  QuadraticObjective q(h, c);
  const Vector xstar = -h.ldlt().solve(c);
  const auto r3 = stationarity_report(q, xstar, dirs);
  CHECK(std::abs(r3.coordinatewise) <= 1e-8);
  CHECK(std::abs(r3.directional) <= 1e-8);

  CHECK_THROWS_AS(stationarity_report(q, xstar, {Vector::Zero(2)}), ContractViolation);
  CHECK_THROWS_AS(stationarity_report(q, xstar, {}), ContractViolation);
}

TEST_CASE("stationarity report on pieces and by forward differences") {
  PiecewisePieces pieces;
  pieces.pieces = {{vec({1.0, 0.0}), 0.0}, {vec({-1.0, 0.0}), 0.0}, {vec({0.0, 1.0}), 0.0}, {vec({0.0, -1.0}), 0.0}};
  const auto r = stationarity_report(pieces, Vector::Zero(2), {vec({1.0, 1.0}), vec({-1.0, 0.0})});
  CHECK(r.coordinatewise == 0.0);
  CHECK(r.directional == doctest::Approx(std::sqrt(0.5)));

  // No exact derivative: the forward difference has O(h) bias.
  FunctionObjective smooth(
      1, [](const Vector& x) { return x[0] * x[0]; }, [](const Vector& x) { return vec({2.0 * x[0]}); });
  CHECK(one_sided_derivative(smooth, vec({1.0}), vec({1.0})) == doctest::Approx(2.0).epsilon(1e-6));
  const auto rs = stationarity_report(smooth, vec({0.0}), {vec({1.0})});
  CHECK(rs.coordinatewise <= 1e-6);
}

TEST_CASE("l1 regularizer") {
  oracle::TestRng rng(6);
  Matrix a = Matrix::Random(3, 3);
  Matrix h = a.transpose() * a + Matrix::Identity(3, 3);
  const Vector c = rng.normal_vec(3);
  auto q = std::make_shared<QuadraticObjective>(h, c, 0.5);

  auto same = add_l1(q, 0.0);
  for (int i = 0; i < 5; ++i) {
    const Vector x = rng.normal_vec(3);
    CHECK(same->value(x) == q->value(x));
    CHECK(same->subgradient(x) == q->subgradient(x));
  }

  auto zero = std::make_shared<FunctionObjective>(
      2, [](const Vector&) { return 0.0; }, [](const Vector&) { return Vector::Zero(2); });
  auto reg = add_l1(zero, 1.0);
  CHECK(reg->value(vec({1.0, -2.0})) == 3.0);
  CHECK(reg->subgradient(vec({1.0, -2.0})) == vec({1.0, -1.0}));
  CHECK(reg->subgradient(vec({0.0, -2.0})) == vec({0.0, -1.0}));

  auto reg2 = add_l1(q, 0.7);
  for (int i = 0; i < 5; ++i) {
    const Vector x = rng.normal_vec(3);
    const double expect = 0.5 * x.dot(h * x) + c.dot(x) + 0.5 + 0.7 * (std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]));
    CHECK(reg2->value(x) == doctest::Approx(expect).epsilon(1e-13));
    Vector g = h * x + c;
    for (Index j = 0; j < 3; ++j) g[j] += 0.7 * (x[j] > 0 ? 1.0 : (x[j] < 0 ? -1.0 : 0.0));
    CHECK((reg2->subgradient(x) - g).norm() <= 1e-13 * g.norm());
  }
  CHECK_THROWS_AS(add_l1(q, -1.0), ContractViolation);
}

TEST_CASE("counted oracles and clocks") {
  auto b = make_problem("relunet-4-2-3", 1).objective;
  WorkClock clock;
  ObjectiveOracle full(*b, &clock);
  const Vector x = Vector::Zero(b->dimension());
  full.value(x);
  full.evaluate(x);
  CHECK(full.counts().values == 6);
  CHECK(full.counts().subgradients == 3);
  CHECK(clock.elapsed_seconds() == doctest::Approx((b->value_flops() + b->subgradient_flops()) / 1e9));

  Rng rng(1);
  RandomBatchOracle rb(*b, rng);
  rb.subgradient(x);
  rb.value(x);
  CHECK(rb.counts().subgradients == 1);
  CHECK(rb.counts().values == 3);

  WallClock wall;
  CHECK(wall.elapsed_seconds() == 0.0);
  {
    TimedSection t(wall);
  }
  CHECK(wall.elapsed_seconds() >= 0.0);
  CHECK(parse_clock_kind("wall") == ClockKind::wall);
  CHECK(to_string(ClockKind::work) == "work");
  CHECK_THROWS_AS(parse_clock_kind("sundial"), ConfigError);
}

TEST_CASE("derived seeds") {
  CHECK(derive_seed(1, {0, 1, 2}) == derive_seed(1, {0, 1, 2}));
  CHECK(derive_seed(1, {0, 1, 2}) != derive_seed(1, {0, 2, 1}));
  CHECK(derive_seed(1, {0}) != derive_seed(2, {0}));
  Rng a(derive_seed(5, {1}));
  Rng b(derive_seed(5, {1}));
  CHECK(uniform01(a) == uniform01(b));
  Rng c(3);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform01(c);
    CHECK((u >= 0.0 && u < 1.0));
    const Vector p = uniform_in_ball(c, vec({1.0, 2.0}), 0.5);
    CHECK((p - vec({1.0, 2.0})).norm() <= 0.5);
  }
}
