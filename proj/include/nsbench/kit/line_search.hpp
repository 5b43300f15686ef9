#pragma once

#include "nsbench/kit/limited_memory.hpp"
#include "nsbench/oracle.hpp"

namespace nsbench::kit {

struct LineSearchParams {
  double eps_left = 1e-4;   // sufficient decrease for serious steps
  double eps_right = 0.25;  // subgradient condition for null steps
  double t_min = 1e-12;
  double t_initial = 1.0;
  double t_max = 1e8;
  int max_trials = 50;
  double gamma = 0.5;  // distance-measure weight of the locality measure
};

struct LineSearchOutcome {
  StepKind kind = StepKind::null;
  double t = 0.0;
  Vector point;        // x + t d
  double value = 0.0;  // f(point)
  Vector subgradient;  // at point
  double locality = 0.0;  // beta at point relative to x (0 for serious steps)
  int trials = 0;
};

// Serious step when f(x + td) <= f(x) - eps_left * t * w with t >= t_min; the
// step is doubled while the decrease keeps improving and no trial has failed.
// Failed trials bisect. From the second trial on, a trial point whose
// subgradient satisfies -beta + xi'd >= -eps_right * w ends the search as a
// null step. Throws LineSearchFailure after max_trials evaluations or when t
// drops below t_min.
LineSearchOutcome nonsmooth_line_search(Oracle& oracle, const Vector& x, double f_x, const Vector& d, double w,
                                        const LineSearchParams& params = {});

LineSearchOutcome nonsmooth_line_search(const Objective& obj, const Vector& x, const Vector& d, double w,
                                        const LineSearchParams& params = {});

}  // namespace nsbench::kit
