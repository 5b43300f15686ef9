#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

#include "nsbench/types.hpp"

namespace nsbench {

// The engine's output sequence is fixed by the standard; the helpers below avoid
// the library distributions so that streams are identical across toolchains.
using Rng = std::mt19937_64;

double uniform01(Rng& rng);
std::size_t uniform_index(Rng& rng, std::size_t n);
double standard_normal(Rng& rng);
Vector normal_vector(Rng& rng, Index n);
Vector uniform_in_ball(Rng& rng, const Vector& center, double radius);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);
std::uint64_t hash_name(std::string_view name);

}  // namespace nsbench
