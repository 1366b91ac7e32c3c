#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "jumpfall/jumps.hpp"

namespace jumpfall {

struct MersenneRow {
  std::uint64_t ell = 0;
  std::optional<int> value;  // nullopt: budget exhausted
  int jumps_used = 0;
};

// ft or sft of 2^ell - 1 for each ell in [ell_lo, ell_hi]. The first jump
// is taken in closed form: jp(2^l - 1) = 3^l - 1, and sjp(2^l - 1) is the
// odd part of 3^l - 1.
std::vector<MersenneRow> mersenne_probe(std::uint64_t ell_lo, std::uint64_t ell_hi, JumpKind kind,
                                        const FallingBudget& budget = {}, int workers = 1);

// Closed-form first jump of 2^ell - 1, exposed for tests.
Nat mersenne_first_jump(JumpKind kind, std::uint64_t ell);

void write_mersenne_tsv(std::ostream& out, const std::vector<MersenneRow>& rows);

}  // namespace jumpfall
