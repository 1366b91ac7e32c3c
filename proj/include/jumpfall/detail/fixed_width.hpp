#pragma once

// Fixed-width fast paths for the maps of collatz_core. Every routine reports
// overflow by returning false, leaving the caller to redo the computation on
// Nat; results that are returned are bit-identical to the Nat path.

#include <bit>
#include <concepts>
#include <cstdint>
#include <limits>

#include "jumpfall/collatz_core.hpp"

namespace jumpfall::detail {

template <class U>
concept FixedWord = std::same_as<U, std::uint64_t> || std::same_as<U, u128>;

template <FixedWord U>
inline constexpr U kMaxWord = ~U{0};

// Largest odd n with (3n+1)/2 representable. 2^64 and 2^128 are 1 mod 3.
template <FixedWord U>
inline constexpr U kOddLimitT = (kMaxWord<U> / 3) * 2;

// Largest n with 3n+1 representable.
template <FixedWord U>
inline constexpr U kOddLimitC = (kMaxWord<U> - 1) / 3;

template <FixedWord U>
inline int bit_width_of(U n) {
  if constexpr (std::same_as<U, std::uint64_t>) {
    return std::bit_width(n);
  } else {
    const auto hi = static_cast<std::uint64_t>(n >> 64);
    return hi ? 64 + std::bit_width(hi) : std::bit_width(static_cast<std::uint64_t>(n));
  }
}

template <FixedWord U>
inline int ctz_of(U n) {
  if constexpr (std::same_as<U, std::uint64_t>) {
    return std::countr_zero(n);
  } else {
    const auto lo = static_cast<std::uint64_t>(n);
    return lo ? std::countr_zero(lo) : 64 + std::countr_zero(static_cast<std::uint64_t>(n >> 64));
  }
}

template <FixedWord U>
inline bool try_step_T(U& n) {
  if (n & 1) {
    if (n > kOddLimitT<U>) return false;
    n = n + (n >> 1) + 1;
  } else {
    n >>= 1;
  }
  return true;
}

template <FixedWord U>
inline bool try_step_C(U& n) {
  if (n & 1) {
    if (n > kOddLimitC<U>) return false;
    n = 3 * n + 1;
  } else {
    n >>= 1;
  }
  return true;
}

// Applies k steps of T. On overflow returns false with n holding the last
// representable value and k the number of steps still owed.
template <FixedWord U>
inline bool try_iterate_T(U& n, std::uint64_t& k, const StepTable& table) {
  const auto w = static_cast<std::uint64_t>(table.width());
  const std::uint64_t mask = table.mask();
  while (k >= w) {
    const auto r = static_cast<std::uint64_t>(n) & mask;
    U next;
    if (__builtin_mul_overflow(static_cast<U>(n >> w), static_cast<U>(table.pow3(table.odd_count(r))), &next) ||
        __builtin_add_overflow(next, static_cast<U>(table.tail(r)), &next)) {
      return false;
    }
    n = next;
    k -= w;
  }
  for (; k > 0; --k) {
    if (!try_step_T(n)) return false;
  }
  return true;
}

// Syracuse step on odd x; nu receives the 2-adic valuation of 3x+1.
template <FixedWord U>
inline bool try_step_syr(U& x, int& nu) {
  if (x > kOddLimitC<U>) return false;
  const U y = 3 * x + 1;
  nu = ctz_of(y);
  x = y >> nu;
  return true;
}

// Same contract as try_iterate_T, for the Syracuse map on odd x.
template <FixedWord U>
inline bool try_iterate_syr(U& x, std::uint64_t& k) {
  int nu = 0;
  for (; k > 0; --k) {
    if (!try_step_syr(x, nu)) return false;
  }
  return true;
}

}  // namespace jumpfall::detail
