#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nsbench/clock.hpp"
#include "nsbench/oracle.hpp"

namespace nsbench::optim {

struct TrajectoryRow {
  std::int64_t iteration = 0;
  double elapsed_sec = 0.0;
  double f = 0.0;
  std::uint64_t feval = 0;
  std::uint64_t geval = 0;

  bool operator==(const TrajectoryRow&) const = default;
};

struct TrajectoryMeta {
  std::string problem;
  std::string algorithm;
  std::uint64_t seed = 0;
  std::int64_t repetition = 0;
  bool stalled = false;

  bool operator==(const TrajectoryMeta&) const = default;
};

// Per-iteration time series of one run. Iterations increase strictly from 0;
// elapsed time and oracle counts never decrease.
struct TrajectoryRecord {
  TrajectoryMeta meta;
  std::vector<TrajectoryRow> rows;

  bool operator==(const TrajectoryRecord&) const = default;

  // Throws ContractViolation naming the first offending row.
  void validate() const;
};

struct RunResult {
  TrajectoryRecord record;
  Vector final_x;
  bool converged = false;
};

// Elapsed times are kept at nanosecond resolution so that they survive the
// fixed nine-digit text form unchanged.
double quantize_seconds(double seconds);

class TrajectoryRecorder {
 public:
  explicit TrajectoryRecorder(const RunClock& clock) : clock_(clock) {}

  void record(std::int64_t iteration, double f, const OracleCounts& counts);
  // Repeats the last row up to `budget` iterations and flags the run stalled.
  void pad_stalled(std::int64_t budget);

  std::int64_t last_iteration() const { return rows_.empty() ? -1 : rows_.back().iteration; }
  TrajectoryRecord take();

 private:
  const RunClock& clock_;
  std::vector<TrajectoryRow> rows_;
  bool stalled_ = false;
};

}  // namespace nsbench::optim
