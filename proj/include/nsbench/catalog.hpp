#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nsbench/batch.hpp"

namespace nsbench {

// A named problem instance: batch-decomposed objective plus its default start.
struct Problem {
  std::string name;
  BatchObjectivePtr objective;
  Vector x0;
};

inline constexpr std::size_t kRelunetSamplesPerBatch = 200;

// Known names:
//   maxq-<n>                       max_i x_i^2 from the standard start
//   abs                            |x| in one dimension from x = 1
//   cb-pl                          2|x1+x2| - |x1-x2| (bounded far from the origin), from the origin
//   relunet-<width>-<layers>-<batches>
//                                  synthetic ReLU regression, absolute loss
// Data and start point are a pure function of (name, seed).
Problem make_problem(std::string_view name, std::uint64_t seed);

bool is_known_problem(std::string_view name);
std::vector<std::string> problem_patterns();

// 2|x1+x2| - |x1-x2| + 2 max(0, |x1-x2| - 10): coordinate-wise stationary but
// not stationary at the origin.
ObjectivePtr make_cb_pl();

}  // namespace nsbench
