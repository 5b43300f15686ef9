#pragma once

#include <optional>

#include "nsbench/optim/trajectory.hpp"

namespace nsbench::bench {

struct TimeToTarget {
  double target = 0.0;
  bool reached = false;
  std::optional<double> seconds;  // set iff reached
  std::optional<std::int64_t> iteration;

  bool operator==(const TimeToTarget&) const = default;
};

// First row with f <= target.
TimeToTarget time_to_target(const optim::TrajectoryRecord& record, double target);

// Last recorded value of the record.
double final_value(const optim::TrajectoryRecord& record);

}  // namespace nsbench::bench
