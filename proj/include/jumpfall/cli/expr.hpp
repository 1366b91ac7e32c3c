#pragma once

#include <cstdint>
#include <string_view>
#include <utility>

#include "jumpfall/nat.hpp"

namespace jumpfall::cli {

// Decimal digits, or `B^k`, `B^k+c`, `B^k-c` with decimal B, k, c.
// Throws std::invalid_argument on anything else or a negative result.
Nat parse_nat_expr(std::string_view text);

// `LO..HI`, each side a Nat expression; requires LO <= HI.
std::pair<Nat, Nat> parse_range(std::string_view text);

// Same, for ranges that must fit in 64 bits.
std::pair<std::uint64_t, std::uint64_t> parse_range_u64(std::string_view text);

}  // namespace jumpfall::cli
