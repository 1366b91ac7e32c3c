#include "jumpfall/collatz_core.hpp"

#include <string>

#include "jumpfall/detail/fixed_width.hpp"

namespace jumpfall {

namespace {

void require_positive(const Nat& n, const char* what) {
  if (n.is_zero()) throw DomainError(std::string(what) + ": n must be >= 1");
}

void require_at_least_two(const Nat& n, const char* what) {
  if (n < Nat(2)) throw DomainError(std::string(what) + ": n must be >= 2");
}

void step_T_big(Nat& n) {
  mpz_ptr p = n.mpz().get_mpz_t();
  if (mpz_odd_p(p)) {
    mpz_mul_ui(p, p, 3);
    mpz_add_ui(p, p, 1);
  }
  mpz_tdiv_q_2exp(p, p, 1);
}

void step_C_big(Nat& n) {
  mpz_ptr p = n.mpz().get_mpz_t();
  if (mpz_odd_p(p)) {
    mpz_mul_ui(p, p, 3);
    mpz_add_ui(p, p, 1);
  } else {
    mpz_tdiv_q_2exp(p, p, 1);
  }
}

void strip_twos(Nat& n) {
  mpz_ptr p = n.mpz().get_mpz_t();
  mpz_tdiv_q_2exp(p, p, mpz_scan1(p, 0));
}

bool small_enough(const Nat& n) { return mpz_size(n.mpz().get_mpz_t()) <= 2; }

enum class Map { T, C };

// Counts steps of T (or C) until the stop predicate holds, starting on u128
// and moving to Nat if a value leaves 128 bits.
template <Map M, class StopFixed, class StopBig>
BudgetedResult count_steps(const Nat& start, std::uint64_t budget, StopFixed stop_fixed,
                           StopBig stop_big) {
  std::uint64_t steps = 0;
  Nat big;
  if (start.fits_u128()) {
    u128 v = start.to_u128();
    while (steps < budget) {
      const bool ok = M == Map::T ? detail::try_step_T(v) : detail::try_step_C(v);
      if (!ok) break;
      ++steps;
      if (stop_fixed(v)) return {steps, steps};
    }
    if (steps == budget) return {std::nullopt, steps};
    big = Nat::from_u128(v);
  } else {
    big = start;
  }
  while (steps < budget) {
    if constexpr (M == Map::T) {
      step_T_big(big);
    } else {
      step_C_big(big);
    }
    ++steps;
    if (stop_big(big)) return {steps, steps};
  }
  return {std::nullopt, steps};
}

}  // namespace

StepTable::StepTable(int width) : width_(width) {
  if (width < 1 || width > 20) throw DomainError("StepTable: width must be in [1, 20]");
  const std::size_t size = std::size_t{1} << width;
  odd_.resize(size);
  tail_.resize(size);
  pow3_.resize(static_cast<std::size_t>(width) + 1);
  pow3_[0] = 1;
  for (int i = 1; i <= width; ++i) pow3_[static_cast<std::size_t>(i)] = pow3_[static_cast<std::size_t>(i) - 1] * 3;
  for (std::size_t r = 0; r < size; ++r) {
    std::uint64_t v = r;
    int odd = 0;
    for (int j = 0; j < width; ++j) {
      if (v & 1) {
        v = v + (v >> 1) + 1;
        ++odd;
      } else {
        v >>= 1;
      }
    }
    odd_[r] = static_cast<std::uint8_t>(odd);
    tail_[r] = v;
  }
}

const StepTable& default_step_table() {
  static const StepTable table(kDefaultTableWidth);
  return table;
}

Nat step_T(const Nat& n) {
  require_positive(n, "step_T");
  Nat out = n;
  step_T_big(out);
  return out;
}

Nat step_C(const Nat& n) {
  require_positive(n, "step_C");
  Nat out = n;
  step_C_big(out);
  return out;
}

SyrStep step_syr(const Nat& x) {
  if (x.is_zero() || x.is_even()) throw DomainError("step_syr: x must be odd and >= 1");
  SyrStep out{x, 0};
  mpz_ptr p = out.value.mpz().get_mpz_t();
  mpz_mul_ui(p, p, 3);
  mpz_add_ui(p, p, 1);
  const auto nu = mpz_scan1(p, 0);
  mpz_tdiv_q_2exp(p, p, nu);
  out.nu = static_cast<int>(nu);
  return out;
}

std::uint64_t bitlen(const Nat& n) {
  require_positive(n, "bitlen");
  return n.bit_length();
}

namespace {

void iterate_T_impl(Nat& n, std::uint64_t k, const StepTable& table, bool allow_fixed) {
  const auto w = static_cast<std::uint64_t>(table.width());
  bool try_fixed = allow_fixed;
  while (k > 0) {
    if (try_fixed && small_enough(n)) {
      u128 v = n.to_u128();
      const bool done = detail::try_iterate_T(v, k, table);
      n = Nat::from_u128(v);
      if (done) return;
      // The next block leaves 128 bits; take it on Nat before retrying.
      try_fixed = false;
      continue;
    }
    try_fixed = allow_fixed;
    mpz_ptr p = n.mpz().get_mpz_t();
    if (k >= w) {
      const std::uint64_t r = n.low_bits(table.width());
      mpz_tdiv_q_2exp(p, p, w);
      mpz_mul_ui(p, p, table.pow3(table.odd_count(r)));
      mpz_add_ui(p, p, table.tail(r));
      k -= w;
    } else {
      step_T_big(n);
      --k;
    }
  }
}

void iterate_syr_impl(Nat& x, std::uint64_t k, const StepTable& table, bool allow_fixed) {
  if (x.is_zero() || x.is_even()) throw DomainError("Syracuse iteration: x must be odd and >= 1");
  const auto w = static_cast<std::uint64_t>(table.width());
  // Invariant: `remaining` odd T-steps are still owed; an even value means
  // the halvings of an already counted Syracuse step are in progress.
  std::uint64_t remaining = k;
  bool try_fixed = allow_fixed;
  while (remaining > 0) {
    if (try_fixed && small_enough(x)) {
      strip_twos(x);
      u128 v = x.to_u128();
      const bool done = detail::try_iterate_syr(v, remaining);
      x = Nat::from_u128(v);
      if (done) return;
      try_fixed = false;
      continue;
    }
    try_fixed = allow_fixed;
    const std::uint64_t r = x.low_bits(table.width());
    const auto odd = static_cast<std::uint64_t>(table.odd_count(r));
    if (odd <= remaining) {
      mpz_ptr p = x.mpz().get_mpz_t();
      mpz_tdiv_q_2exp(p, p, w);
      mpz_mul_ui(p, p, table.pow3(static_cast<int>(odd)));
      mpz_add_ui(p, p, table.tail(r));
      remaining -= odd;
    } else {
      if (x.is_odd()) --remaining;
      step_T_big(x);
    }
  }
  strip_twos(x);
}

}  // namespace

void iterate_T_inplace(Nat& n, std::uint64_t k, const StepTable& table) { iterate_T_impl(n, k, table, true); }

void iterate_syr_inplace(Nat& x, std::uint64_t k, const StepTable& table) {
  iterate_syr_impl(x, k, table, true);
}

namespace detail {

void iterate_T_nat(Nat& n, std::uint64_t k, const StepTable& table) { iterate_T_impl(n, k, table, false); }

void iterate_syr_nat(Nat& x, std::uint64_t k, const StepTable& table) { iterate_syr_impl(x, k, table, false); }

}  // namespace detail

Nat iterate_T(const Nat& n, std::uint64_t k, const StepTable& table) {
  require_positive(n, "iterate_T");
  Nat out = n;
  iterate_T_inplace(out, k, table);
  return out;
}

BudgetedResult stopping_time(const Nat& n, std::uint64_t budget) {
  require_at_least_two(n, "stopping_time");
  const u128 start = n.fits_u128() ? n.to_u128() : 0;
  return count_steps<Map::T>(
      n, budget, [start](u128 v) { return v < start; }, [&n](const Nat& v) { return v < n; });
}

BudgetedResult glide(const Nat& n, std::uint64_t budget) {
  require_at_least_two(n, "glide");
  const u128 start = n.fits_u128() ? n.to_u128() : 0;
  return count_steps<Map::C>(
      n, budget, [start](u128 v) { return v < start; }, [&n](const Nat& v) { return v < n; });
}

BudgetedResult total_stopping_time(const Nat& n, std::uint64_t budget) {
  require_positive(n, "total_stopping_time");
  const Nat one(1);
  return count_steps<Map::T>(
      n, budget, [](u128 v) { return v == 1; }, [&one](const Nat& v) { return v == one; });
}

std::vector<Nat> preimages_T(const Nat& y) {
  require_positive(y, "preimages_T");
  std::vector<Nat> out;
  Nat twice = y;
  twice <<= 1;
  Nat odd = twice;
  odd -= Nat(1);
  if (odd.mod_small(3) == 0) {
    odd.div_exact_small(3);
    if (!odd.is_zero()) out.push_back(std::move(odd));
  }
  out.push_back(std::move(twice));
  return out;
}

}  // namespace jumpfall
