#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "jumpfall/jumps.hpp"

namespace jumpfall {

struct RandomSearchConfig {
  int bits = 64;
  std::uint64_t count = 0;
  int ft_threshold = 5;
  int sft_threshold = 3;
  std::uint64_t seed = 1;
  FallingBudget budget;
};

struct RandomHit {
  Nat n;
  std::optional<int> ft;   // nullopt: budget exhausted
  std::optional<int> sft;
};

// Uniform odd integer in [2^(bits-1), 2^bits), built from whole 64-bit
// outputs of the engine (low word first) so the stream is identical on
// every platform.
Nat random_odd(std::mt19937_64& engine, int bits);

// Draws `count` integers and keeps those with ft >= ft_threshold or
// sft >= sft_threshold; budget exhaustion counts as a hit.
std::vector<RandomHit> random_search(const RandomSearchConfig& config);

}  // namespace jumpfall
