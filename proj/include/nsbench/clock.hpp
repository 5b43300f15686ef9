#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <string_view>

namespace nsbench {

// Accumulates algorithm time only. Run loops bracket algorithm work with
// resume()/pause(); recording evaluations happen while paused.
class RunClock {
 public:
  virtual ~RunClock() = default;
  virtual void resume() = 0;
  virtual void pause() = 0;
  // Floating point work performed by the algorithm since the last call.
  virtual void charge(double flops) = 0;
  virtual double elapsed_seconds() const = 0;
};

// Monotonic wall-clock time.
class WallClock final : public RunClock {
 public:
  void resume() override;
  void pause() override;
  void charge(double) override {}
  double elapsed_seconds() const override;

 private:
  using clock = std::chrono::steady_clock;
  clock::duration total_{};
  clock::time_point started_{};
  bool running_ = false;
};

// Deterministic modeled time: charged flops at a nominal machine rate.
class WorkClock final : public RunClock {
 public:
  static constexpr double kNominalFlopsPerSecond = 1.0e9;

  void resume() override {}
  void pause() override {}
  void charge(double flops) override { flops_ += flops; }
  double elapsed_seconds() const override { return flops_ / kNominalFlopsPerSecond; }

 private:
  double flops_ = 0.0;
};

enum class ClockKind { work, wall };

std::unique_ptr<RunClock> make_clock(ClockKind kind);
std::string_view to_string(ClockKind kind);
ClockKind parse_clock_kind(std::string_view text);

// RAII bracket around a stretch of algorithm work.
class TimedSection {
 public:
  explicit TimedSection(RunClock& clock) : clock_(clock) { clock_.resume(); }
  ~TimedSection() { clock_.pause(); }
  TimedSection(const TimedSection&) = delete;
  TimedSection& operator=(const TimedSection&) = delete;

 private:
  RunClock& clock_;
};

}  // namespace nsbench
