#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jumpfall/nat.hpp"

namespace jumpfall {

// Raised when an argument lies outside the domain of a map (n = 0, even
// input to the Syracuse map, ...). The message names the violated condition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::uint64_t kDefaultStepBudget = 1'000'000;
inline constexpr int kDefaultTableWidth = 16;

// Precomputed affine form of w steps of T:
//   T^(w)(n) = 3^odd_count(r) * floor(n / 2^w) + tail(r),  r = n mod 2^w.
// Immutable after construction.
class StepTable {
 public:
  explicit StepTable(int width = kDefaultTableWidth);

  int width() const { return width_; }
  std::uint64_t mask() const { return (std::uint64_t{1} << width_) - 1; }
  int odd_count(std::uint64_t r) const { return odd_[r]; }
  std::uint64_t tail(std::uint64_t r) const { return tail_[r]; }
  // 3^i for 0 <= i <= width.
  std::uint64_t pow3(int i) const { return pow3_[static_cast<std::size_t>(i)]; }

 private:
  int width_;
  std::vector<std::uint8_t> odd_;
  std::vector<std::uint64_t> tail_;
  std::vector<std::uint64_t> pow3_;
};

// Shared width-16 table, built on first use.
const StepTable& default_step_table();

// Outcome of a search that is conjecturally finite: either a count, or the
// budget ran out. Exhaustion is never reported as a value.
struct BudgetedResult {
  std::optional<std::uint64_t> value;
  std::uint64_t steps_used = 0;

  bool exhausted() const { return !value.has_value(); }
};

struct SyrStep {
  Nat value;
  int nu = 0;
};

Nat step_T(const Nat& n);
Nat step_C(const Nat& n);
// Largest odd factor of 3x+1 together with the 2-adic valuation of 3x+1.
SyrStep step_syr(const Nat& x);
std::uint64_t bitlen(const Nat& n);

Nat iterate_T(const Nat& n, std::uint64_t k, const StepTable& table = default_step_table());
// In-place variant used by the hot loops.
void iterate_T_inplace(Nat& n, std::uint64_t k, const StepTable& table = default_step_table());
// k applications of the Syracuse map to odd x.
void iterate_syr_inplace(Nat& x, std::uint64_t k, const StepTable& table = default_step_table());

BudgetedResult stopping_time(const Nat& n, std::uint64_t budget = kDefaultStepBudget);
BudgetedResult glide(const Nat& n, std::uint64_t budget = kDefaultStepBudget);
BudgetedResult total_stopping_time(const Nat& n, std::uint64_t budget = kDefaultStepBudget);

// All n with T(n) = y, ascending.
std::vector<Nat> preimages_T(const Nat& y);

namespace detail {

// Nat-only iteration with the fixed-width fast paths disabled; the reference
// side of the differential tests.
void iterate_T_nat(Nat& n, std::uint64_t k, const StepTable& table = default_step_table());
void iterate_syr_nat(Nat& x, std::uint64_t k, const StepTable& table = default_step_table());

}  // namespace detail

}  // namespace jumpfall
