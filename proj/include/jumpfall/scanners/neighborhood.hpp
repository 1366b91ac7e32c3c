#pragma once

#include <cstdint>
#include <vector>

#include "jumpfall/jumps.hpp"

namespace jumpfall {

inline constexpr std::uint64_t kDefaultNodeCap = 10'000'000;

struct NeighborhoodConfig {
  Nat seed;
  int i_max = 0;        // backward depth
  int j_max = 0;        // forward depth
  int persist_k = 24;   // 0 disables the persistence filter
  int ft_threshold = 0;
  // Per forward orbit point; levels are expanded breadth-first, so a
  // truncated tree loses its deepest levels.
  std::uint64_t node_cap = kDefaultNodeCap;
  FallingBudget budget;
};

struct NeighborhoodHit {
  Nat n;
  int ft = 0;

  friend bool operator==(const NeighborhoodHit&, const NeighborhoodHit&) = default;
};

struct NeighborhoodResult {
  std::vector<NeighborhoodHit> hits;  // ascending by n
  bool truncated = false;
  std::uint64_t nodes_visited = 0;
};

// All m with T^(i)(m) = T^(j)(seed) for some i <= i_max, j <= j_max that
// are persist_k-persistent and have ft(m) >= ft_threshold. Integers whose
// falling time exhausts the budget are reported with ft = -1.
NeighborhoodResult neighborhood(const NeighborhoodConfig& config);

}  // namespace jumpfall
