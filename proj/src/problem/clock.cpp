#include "nsbench/clock.hpp"

#include "nsbench/errors.hpp"

namespace nsbench {

void WallClock::resume() {
  if (running_) return;
  started_ = clock::now();
  running_ = true;
}

void WallClock::pause() {
  if (!running_) return;
  total_ += clock::now() - started_;
  running_ = false;
}

double WallClock::elapsed_seconds() const {
  auto total = total_;
  if (running_) total += clock::now() - started_;
  return std::chrono::duration<double>(total).count();
}

std::unique_ptr<RunClock> make_clock(ClockKind kind) {
  if (kind == ClockKind::wall) return std::make_unique<WallClock>();
  return std::make_unique<WorkClock>();
}

std::string_view to_string(ClockKind kind) { return kind == ClockKind::wall ? "wall" : "work"; }

ClockKind parse_clock_kind(std::string_view text) {
  if (text == "work") return ClockKind::work;
  if (text == "wall") return ClockKind::wall;
  throw ConfigError("unknown clock '" + std::string(text) + "' (valid: work, wall)");
}

}  // namespace nsbench
