#include "nsbench/bench/time_to_target.hpp"

#include "nsbench/errors.hpp"

namespace nsbench::bench {

TimeToTarget time_to_target(const optim::TrajectoryRecord& record, double target) {
  NSBENCH_REQUIRE(!record.rows.empty(), "time_to_target: empty record");
  TimeToTarget out;
  out.target = target;
  for (const auto& r : record.rows) {
    if (r.f <= target) {
      out.reached = true;
      out.seconds = r.elapsed_sec;
      out.iteration = r.iteration;
      break;
    }
  }
  return out;
}

double final_value(const optim::TrajectoryRecord& record) {
  NSBENCH_REQUIRE(!record.rows.empty(), "final_value: empty record");
  return record.rows.back().f;
}

}  // namespace nsbench::bench
