#pragma once

#include <cstdint>

#include "jumpfall/detail/fixed_width.hpp"
#include "jumpfall/jumps.hpp"

namespace jumpfall::detail {

enum class FixedStatus { Finite, Exhausted, Overflow };

template <FixedWord U>
struct FixedFalling {
  FixedStatus status = FixedStatus::Exhausted;
  int k = 0;
  int jumps_used = 0;
  U witness = 0;
};

template <FixedWord U>
inline FixedFalling<U> falling_time_fixed(JumpKind kind, U n, int h, int max_jumps, std::uint64_t max_bits,
                                          const StepTable& table) {
  FixedFalling<U> out;
  U x = n;
  for (int j = 1; j <= max_jumps; ++j) {
    std::uint64_t steps = static_cast<std::uint64_t>(h) * static_cast<std::uint64_t>(bit_width_of(x));
    const bool ok = kind == JumpKind::Jump ? try_iterate_T(x, steps, table) : try_iterate_syr(x, steps);
    if (!ok) {
      out.status = FixedStatus::Overflow;
      return out;
    }
    out.jumps_used = j;
    if (x < n) {
      out.status = FixedStatus::Finite;
      out.k = j;
      out.witness = x;
      return out;
    }
    if (static_cast<std::uint64_t>(bit_width_of(x)) > max_bits) break;
  }
  out.status = FixedStatus::Exhausted;
  return out;
}

}  // namespace jumpfall::detail
