#include "nsbench/kit/line_search.hpp"

#include <cmath>
#include <optional>

#include "nsbench/errors.hpp"
#include "nsbench/kit/aggregation.hpp"

namespace nsbench::kit {

LineSearchOutcome nonsmooth_line_search(Oracle& oracle, const Vector& x, double f_x, const Vector& d, double w,
                                        const LineSearchParams& params) {
  NSBENCH_REQUIRE(w > 0.0 && std::isfinite(w), "nonsmooth_line_search: model decrease must be positive");
  NSBENCH_REQUIRE(d.size() == x.size(), "nonsmooth_line_search: dimension mismatch");
  NSBENCH_REQUIRE(d.norm() > 0.0, "nonsmooth_line_search: zero direction");
  NSBENCH_REQUIRE(params.max_trials > 0 && params.t_initial >= params.t_min, "nonsmooth_line_search: bad parameters");

  std::optional<LineSearchOutcome> serious;
  bool bracketed = false;
  double t = params.t_initial;
  for (int trial = 1; trial <= params.max_trials; ++trial) {
    if (t < params.t_min) break;
    Vector y = x + t * d;
    Evaluation e = oracle.evaluate(y);

    if (e.value <= f_x - params.eps_left * t * w) {
      if (serious && e.value >= serious->value) return *serious;
      serious = LineSearchOutcome{StepKind::serious, t, std::move(y), e.value, std::move(e.subgradient), 0.0, trial};
      if (bracketed || 2.0 * t > params.t_max) return *serious;
      t *= 2.0;
      continue;
    }
    if (serious) {
      serious->trials = trial;
      return *serious;
    }

    bracketed = true;
    if (trial > 1) {
      const double beta = locality_measure(f_x, e.value, e.subgradient, x, y, params.gamma);
      if (-beta + e.subgradient.dot(d) >= -params.eps_right * w) {
        return LineSearchOutcome{StepKind::null, t, std::move(y), e.value, std::move(e.subgradient), beta, trial};
      }
    }
    t *= 0.5;
  }
  if (serious) return *serious;
  throw LineSearchFailure("nonsmooth_line_search: no serious or null step found");
}

LineSearchOutcome nonsmooth_line_search(const Objective& obj, const Vector& x, const Vector& d, double w,
                                        const LineSearchParams& params) {
  ObjectiveOracle oracle(obj);
  return nonsmooth_line_search(oracle, x, obj.value(x), d, w, params);
}

}  // namespace nsbench::kit
