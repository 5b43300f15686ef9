#pragma once

#include <string>
#include <vector>

#include "nsbench/bench/config.hpp"

namespace nsbench::bench {

inline constexpr const char* kFinalValueChart = "fig1_final_values.svg";
inline constexpr const char* kTimeChart = "fig2_time_to_target.svg";

struct HarnessOptions {
  // 0 selects NSBENCH_THREADS if set, else the hardware concurrency.
  unsigned workers = 0;
  // Per-run failures are reported here (one line each) when not null.
  std::vector<std::string>* failures = nullptr;
};

// Seed of run (problem p, algorithm a, repetition r).
std::uint64_t run_seed(std::uint64_t master, std::size_t p, std::size_t a, std::int64_t r);

std::string csv_file_name(const optim::TrajectoryMeta& meta);

// One record per (problem, algorithm, repetition) in that nesting order, each
// written to output_dir as CSV before returning. A failing run yields a
// stalled record holding the start value.
std::vector<optim::TrajectoryRecord> run_benchmark(const BenchmarkConfig& config, const HarnessOptions& options = {});

// Both charts into `dir`.
void emit_charts(const std::vector<optim::TrajectoryRecord>& records, const std::string& dir);

// Every *.csv in `dir`, in file-name order.
std::vector<optim::TrajectoryRecord> load_records(const std::string& dir);

unsigned worker_count(unsigned requested, std::size_t jobs);

}  // namespace nsbench::bench
