#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nsbench/clock.hpp"
#include "nsbench/optim/runner.hpp"

namespace nsbench::bench {

struct AlgorithmSpec {
  optim::Algorithm algorithm = optim::Algorithm::adam;
  optim::AlgorithmParams params;

  bool operator==(const AlgorithmSpec&) const = default;
};

struct BenchmarkConfig {
  std::vector<std::string> problems;
  std::vector<AlgorithmSpec> algorithms;
  std::int64_t budget = 1000;
  std::uint64_t seed = 1;
  std::int64_t repetitions = 1;
  std::string output_dir = "results";
  ClockKind clock = ClockKind::work;

  bool operator==(const BenchmarkConfig&) const = default;

  // Throws ConfigError.
  void validate() const;
};

// JSON document:
//   {"problems": [...], "algorithms": ["adam", {"name": "lmbm", "params": {...}}],
//    "budget": 1000, "seed": 1, "repetitions": 1, "output_dir": "results", "clock": "work"}
// Malformed text throws ParseError carrying the line; unknown keys, names or
// bad values throw ConfigError.
BenchmarkConfig load_config(std::string_view text);
BenchmarkConfig load_config_file(const std::string& path);
std::string serialize_config(const BenchmarkConfig& config);

// Three algorithms (adam, sfo, lmbm) on relunet-16-3-{5,15,25,35}.
BenchmarkConfig default_suite_config();

}  // namespace nsbench::bench
