#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "jumpfall/collatz_core.hpp"

namespace jumpfall {

enum class JumpKind { Jump, SyracuseJump };

std::string_view to_string(JumpKind kind);

inline constexpr int kDefaultMaxJumps = 64;

// Limits for falling-time searches. max_bits unset means 4*bitlen(n) + 64.
struct FallingBudget {
  int max_jumps = kDefaultMaxJumps;
  std::optional<std::uint64_t> max_bits;

  std::uint64_t bits_for(std::uint64_t start_bits) const {
    return max_bits ? *max_bits : 4 * start_bits + 64;
  }
};

struct FallingTimeResult {
  enum class Outcome { Finite, BudgetExhausted };

  Outcome outcome = Outcome::BudgetExhausted;
  int k = 0;         // valid when finite
  Nat witness;       // first jump value below the start, when finite
  int jumps_used = 0;

  bool finite() const { return outcome == Outcome::Finite; }
};

// jp(n) = T^(l)(n) with l the bit length of n.
Nat jump(const Nat& n);
Nat jump_h(const Nat& n, int h);
// sjp(n) = Syr^(l)(n) for odd n.
Nat sjump(const Nat& n);
Nat sjump_h(const Nat& n, int h);
Nat jump_of(JumpKind kind, const Nat& n, int h = 1);

FallingTimeResult falling_time(const Nat& n, const FallingBudget& budget = {});
FallingTimeResult falling_time_h(const Nat& n, int h, const FallingBudget& budget = {});
FallingTimeResult sfalling_time(const Nat& n, const FallingBudget& budget = {});
FallingTimeResult sfalling_time_h(const Nat& n, int h, const FallingBudget& budget = {});
FallingTimeResult falling_time_of(JumpKind kind, const Nat& n, int h = 1, const FallingBudget& budget = {});

// Scalar entry point for range scans: the falling time, or nullopt when the
// budget is exhausted. Domain checks are the caller's job.
std::optional<int> falling_time_value(JumpKind kind, std::uint64_t n, int h, const FallingBudget& budget);

struct JumpTrace {
  Nat start;
  JumpKind kind = JumpKind::Jump;
  int h = 1;
  std::vector<Nat> terms;               // terms[0] == start
  std::vector<std::uint64_t> steps_per_term;  // steps taken from terms[i] to terms[i+1]
  bool bits_exceeded = false;
};

// Up to max_terms values (start included) of the orbit under jp_h or sjp_h.
JumpTrace jump_orbit(const Nat& n, JumpKind kind, int h, int max_terms,
                     std::optional<std::uint64_t> max_bits = std::nullopt);

namespace detail {

// Jump loop on Nat. With nat_only set, the fixed-width fast paths are
// bypassed entirely (reference side of the differential tests).
FallingTimeResult falling_time_big(JumpKind kind, const Nat& n, int h, const FallingBudget& budget,
                                   bool nat_only = true);

}  // namespace detail

}  // namespace jumpfall
