#include "nsbench/optim/trajectory.hpp"

#include <cmath>

#include "nsbench/errors.hpp"

namespace nsbench::optim {

void TrajectoryRecord::validate() const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::string where = "trajectory row " + std::to_string(i) + ": ";
    if (i == 0) {
      if (r.iteration != 0) throw ContractViolation(where + "iterations must start at 0");
      continue;
    }
    const auto& p = rows[i - 1];
    if (r.iteration <= p.iteration) throw ContractViolation(where + "iteration not strictly increasing");
    if (r.elapsed_sec < p.elapsed_sec) throw ContractViolation(where + "elapsed time decreased");
    if (r.feval < p.feval || r.geval < p.geval) throw ContractViolation(where + "oracle count decreased");
  }
}

double quantize_seconds(double seconds) { return std::round(seconds * 1e9) / 1e9; }

void TrajectoryRecorder::record(std::int64_t iteration, double f, const OracleCounts& counts) {
  double t = quantize_seconds(clock_.elapsed_seconds());
  if (!rows_.empty()) t = std::max(t, rows_.back().elapsed_sec);
  rows_.push_back({iteration, t, f, counts.values, counts.subgradients});
}

void TrajectoryRecorder::pad_stalled(std::int64_t budget) {
  stalled_ = true;
  if (rows_.empty()) return;
  const TrajectoryRow last = rows_.back();
  for (std::int64_t k = last.iteration + 1; k <= budget; ++k) {
    TrajectoryRow r = last;
    r.iteration = k;
    rows_.push_back(r);
  }
}

TrajectoryRecord TrajectoryRecorder::take() {
  TrajectoryRecord rec;
  rec.rows = std::move(rows_);
  rec.meta.stalled = stalled_;
  rows_.clear();
  return rec;
}

}  // namespace nsbench::optim
