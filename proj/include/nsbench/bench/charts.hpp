#pragma once

#include <string>
#include <vector>

#include "nsbench/optim/trajectory.hpp"

namespace nsbench::bench {

// Deterministic SVG text. Problems are grouped in natural name order and
// algorithms follow the fixed algorithm-name order, so the output does not
// depend on record order. Repetitions are averaged.

// One bar (class "bar") per (problem, algorithm): mean final value.
std::string render_final_value_svg(const std::vector<optim::TrajectoryRecord>& records);

// One bar per (problem, algorithm) that reaches the target: mean time to reach
// the final value of the ADAM run of the same problem and repetition. Runs that
// never reach it get a "not-reached" marker instead of a bar. Throws
// ConfigError when a problem has no ADAM record.
std::string render_time_svg(const std::vector<optim::TrajectoryRecord>& records);

void emit_final_value_chart(const std::vector<optim::TrajectoryRecord>& records, const std::string& path);
void emit_time_chart(const std::vector<optim::TrajectoryRecord>& records, const std::string& path);

// Digit runs compare numerically: relunet-16-3-5 < relunet-16-3-15.
bool natural_less(const std::string& a, const std::string& b);

}  // namespace nsbench::bench
