#include "nsbench/piecewise.hpp"

#include <cmath>

#include "nsbench/errors.hpp"
#include "nsbench/kit/min_norm.hpp"

namespace nsbench {

namespace {

constexpr double kTieTolerance = 1e-12;

struct TermState {
  double value;
  std::vector<std::size_t> active;
};

TermState evaluate_term(const PiecewisePieces& term, const Vector& x) {
  const bool is_max = term.combiner == Combiner::max;
  std::vector<double> vals;
  vals.reserve(term.pieces.size());
  double best = term.pieces.front().at(x);
  for (const auto& p : term.pieces) {
    const double v = p.at(x);
    vals.push_back(v);
    best = is_max ? std::max(best, v) : std::min(best, v);
  }
  TermState s{best, {}};
  const double tol = kTieTolerance * (1.0 + std::abs(best));
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (std::abs(vals[i] - best) <= tol) s.active.push_back(i);
  }
  return s;
}

}  // namespace

Index PiecewisePieces::dimension() const { return pieces.empty() ? 0 : pieces.front().a.size(); }

void PiecewisePieces::validate() const {
  NSBENCH_REQUIRE(!pieces.empty(), "PiecewisePieces: needs at least one piece");
  const Index n = dimension();
  NSBENCH_REQUIRE(n > 0, "PiecewisePieces: pieces must have positive dimension");
  for (const auto& p : pieces) {
    NSBENCH_REQUIRE(p.a.size() == n, "PiecewisePieces: pieces differ in dimension");
  }
}

PiecewiseLinear::PiecewiseLinear(std::vector<PiecewisePieces> terms, double constant)
    : terms_(std::move(terms)), constant_(constant), dimension_(0) {
  NSBENCH_REQUIRE(!terms_.empty(), "PiecewiseLinear: needs at least one term");
  for (const auto& t : terms_) t.validate();
  dimension_ = terms_.front().dimension();
  for (const auto& t : terms_) {
    NSBENCH_REQUIRE(t.dimension() == dimension_, "PiecewiseLinear: terms differ in dimension");
  }
}

double PiecewiseLinear::do_value(const Vector& x) const {
  double sum = constant_;
  for (const auto& t : terms_) sum += evaluate_term(t, x).value;
  return sum;
}

Vector PiecewiseLinear::do_subgradient(const Vector& x) const {
  Vector g = Vector::Zero(dimension_);
  for (const auto& t : terms_) {
    const auto s = evaluate_term(t, x);
    if (s.active.size() == 1) {
      g += t.pieces[s.active.front()].a;
      continue;
    }
    std::vector<Vector> coeffs;
    coeffs.reserve(s.active.size());
    for (std::size_t i : s.active) coeffs.push_back(t.pieces[i].a);
    g += kit::min_norm_convex_hull(coeffs).point;
  }
  return g;
}

std::optional<double> PiecewiseLinear::directional_derivative(const Vector& x, const Vector& d) const {
  check_dimension(*this, x);
  check_dimension(*this, d);
  double sum = 0.0;
  for (const auto& t : terms_) {
    const auto s = evaluate_term(t, x);
    const bool is_max = t.combiner == Combiner::max;
    double best = t.pieces[s.active.front()].a.dot(d);
    for (std::size_t i : s.active) {
      const double slope = t.pieces[i].a.dot(d);
      best = is_max ? std::max(best, slope) : std::min(best, slope);
    }
    sum += best;
  }
  return sum;
}

bool PiecewiseLinear::differentiable_at(const Vector& x) const {
  check_dimension(*this, x);
  for (const auto& t : terms_) {
    const auto s = evaluate_term(t, x);
    for (std::size_t i : s.active) {
      if (t.pieces[i].a != t.pieces[s.active.front()].a) return false;
    }
  }
  return true;
}

double PiecewiseLinear::value_flops() const {
  double pieces = 0.0;
  for (const auto& t : terms_) pieces += static_cast<double>(t.pieces.size());
  return 2.0 * pieces * static_cast<double>(dimension_);
}

PiecewisePieces abs_term(const Vector& a, double b, double weight) {
  PiecewisePieces t;
  t.combiner = weight >= 0.0 ? Combiner::max : Combiner::min;
  t.pieces.push_back({weight * a, weight * b});
  t.pieces.push_back({-weight * a, -weight * b});
  return t;
}

PiecewisePieces relu_term(const Vector& a, double b) {
  PiecewisePieces t;
  t.combiner = Combiner::max;
  t.pieces.push_back({Vector::Zero(a.size()), 0.0});
  t.pieces.push_back({a, b});
  return t;
}

}  // namespace nsbench
