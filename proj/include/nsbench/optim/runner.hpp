#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "nsbench/catalog.hpp"
#include "nsbench/optim/adam.hpp"
#include "nsbench/optim/gradient_sampling.hpp"
#include "nsbench/optim/lmbm.hpp"
#include "nsbench/optim/sfo.hpp"

namespace nsbench::optim {

enum class Algorithm { adam, sfo, lmbm, lmbm_avg, lmbm_rand, lmbm_seq, gradsamp };

inline constexpr std::array<std::string_view, 7> kAlgorithmNames{"adam",      "sfo",      "lmbm",    "lmbm-avg",
                                                                  "lmbm-rand", "lmbm-seq", "gradsamp"};

std::string_view to_string(Algorithm alg);
std::optional<Algorithm> parse_algorithm(std::string_view name);

struct AlgorithmParams {
  AdamParams adam;
  SfoParams sfo;
  LmbmParams lmbm;
  GradSamplingParams gradsamp;
  // Distance-measure weight for the LMBM family; unset selects 0 on convex
  // problems and 0.5 otherwise.
  std::optional<double> lmbm_gamma;

  bool operator==(const AlgorithmParams&) const;
};

// Runs one algorithm on a problem from its default start. `seed` feeds the
// run's random stream; the record's metadata carries problem, algorithm and seed.
RunResult run_algorithm(Algorithm alg, const AlgorithmParams& params, const Problem& problem, std::int64_t budget,
                        std::uint64_t seed, RunClock* clock = nullptr);

}  // namespace nsbench::optim
