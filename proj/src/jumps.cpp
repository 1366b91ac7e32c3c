#include "jumpfall/jumps.hpp"

#include <string>

#include "jumpfall/detail/falling_fixed.hpp"

namespace jumpfall {

namespace {

void check_h(int h) {
  if (h < 1) throw DomainError("h must be >= 1");
}

void check_odd(const Nat& n, const char* what) {
  if (n.is_zero() || n.is_even()) throw DomainError(std::string(what) + ": n must be odd and >= 1");
}

void check_falling_domain(JumpKind kind, const Nat& n) {
  if (n < Nat(3)) throw DomainError("falling time: n must be >= 3");
  if (kind == JumpKind::SyracuseJump && n.is_even()) throw DomainError("Syracuse falling time: n must be odd");
}

void advance(JumpKind kind, Nat& x, int h, bool nat_only = false) {
  const std::uint64_t steps = static_cast<std::uint64_t>(h) * x.bit_length();
  if (kind == JumpKind::Jump) {
    nat_only ? detail::iterate_T_nat(x, steps) : iterate_T_inplace(x, steps);
  } else {
    nat_only ? detail::iterate_syr_nat(x, steps) : iterate_syr_inplace(x, steps);
  }
}

template <detail::FixedWord U>
std::optional<FallingTimeResult> try_fixed(JumpKind kind, U n, int h, const FallingBudget& budget) {
  const auto bits = static_cast<std::uint64_t>(detail::bit_width_of(n));
  const auto r = detail::falling_time_fixed(kind, n, h, budget.max_jumps, budget.bits_for(bits),
                                            default_step_table());
  if (r.status == detail::FixedStatus::Overflow) return std::nullopt;
  FallingTimeResult out;
  out.jumps_used = r.jumps_used;
  if (r.status == detail::FixedStatus::Finite) {
    out.outcome = FallingTimeResult::Outcome::Finite;
    out.k = r.k;
    if constexpr (std::is_same_v<U, std::uint64_t>) {
      out.witness = Nat(r.witness);
    } else {
      out.witness = Nat::from_u128(r.witness);
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(JumpKind kind) { return kind == JumpKind::Jump ? "jump" : "syracuse"; }

Nat jump(const Nat& n) { return jump_h(n, 1); }

Nat jump_h(const Nat& n, int h) {
  if (n.is_zero()) throw DomainError("jump: n must be >= 1");
  check_h(h);
  Nat x = n;
  advance(JumpKind::Jump, x, h);
  return x;
}

Nat sjump(const Nat& n) { return sjump_h(n, 1); }

Nat sjump_h(const Nat& n, int h) {
  check_odd(n, "sjump");
  check_h(h);
  Nat x = n;
  advance(JumpKind::SyracuseJump, x, h);
  return x;
}

Nat jump_of(JumpKind kind, const Nat& n, int h) {
  return kind == JumpKind::Jump ? jump_h(n, h) : sjump_h(n, h);
}

FallingTimeResult falling_time_of(JumpKind kind, const Nat& n, int h, const FallingBudget& budget) {
  check_falling_domain(kind, n);
  check_h(h);
  if (n.fits_u64()) {
    if (auto r = try_fixed<std::uint64_t>(kind, n.to_u64(), h, budget)) return *std::move(r);
  }
  if (n.fits_u128()) {
    if (auto r = try_fixed<u128>(kind, n.to_u128(), h, budget)) return *std::move(r);
  }
  return detail::falling_time_big(kind, n, h, budget, false);
}

FallingTimeResult falling_time(const Nat& n, const FallingBudget& budget) {
  return falling_time_of(JumpKind::Jump, n, 1, budget);
}

FallingTimeResult falling_time_h(const Nat& n, int h, const FallingBudget& budget) {
  return falling_time_of(JumpKind::Jump, n, h, budget);
}

FallingTimeResult sfalling_time(const Nat& n, const FallingBudget& budget) {
  return falling_time_of(JumpKind::SyracuseJump, n, 1, budget);
}

FallingTimeResult sfalling_time_h(const Nat& n, int h, const FallingBudget& budget) {
  return falling_time_of(JumpKind::SyracuseJump, n, h, budget);
}

std::optional<int> falling_time_value(JumpKind kind, std::uint64_t n, int h, const FallingBudget& budget) {
  const auto bits = static_cast<std::uint64_t>(detail::bit_width_of(n));
  const auto r = detail::falling_time_fixed(kind, n, h, budget.max_jumps, budget.bits_for(bits),
                                            default_step_table());
  switch (r.status) {
    case detail::FixedStatus::Finite:
      return r.k;
    case detail::FixedStatus::Exhausted:
      return std::nullopt;
    case detail::FixedStatus::Overflow:
      break;
  }
  const auto slow = falling_time_of(kind, Nat(n), h, budget);
  if (!slow.finite()) return std::nullopt;
  return slow.k;
}

JumpTrace jump_orbit(const Nat& n, JumpKind kind, int h, int max_terms, std::optional<std::uint64_t> max_bits) {
  if (kind == JumpKind::SyracuseJump) {
    check_odd(n, "jump_orbit");
  } else if (n.is_zero()) {
    throw DomainError("jump_orbit: n must be >= 1");
  }
  check_h(h);
  JumpTrace trace;
  trace.start = n;
  trace.kind = kind;
  trace.h = h;
  trace.terms.push_back(n);
  const std::uint64_t limit = max_bits ? *max_bits : 4 * n.bit_length() + 64;
  while (static_cast<int>(trace.terms.size()) < max_terms) {
    Nat next = trace.terms.back();
    trace.steps_per_term.push_back(static_cast<std::uint64_t>(h) * next.bit_length());
    advance(kind, next, h);
    const bool too_big = next.bit_length() > limit;
    trace.terms.push_back(std::move(next));
    if (too_big) {
      trace.bits_exceeded = true;
      break;
    }
  }
  return trace;
}

namespace detail {

FallingTimeResult falling_time_big(JumpKind kind, const Nat& n, int h, const FallingBudget& budget,
                                   bool nat_only) {
  check_falling_domain(kind, n);
  check_h(h);
  const std::uint64_t limit = budget.bits_for(n.bit_length());
  FallingTimeResult out;
  Nat x = n;
  for (int j = 1; j <= budget.max_jumps; ++j) {
    advance(kind, x, h, nat_only);
    out.jumps_used = j;
    if (x < n) {
      out.outcome = FallingTimeResult::Outcome::Finite;
      out.k = j;
      out.witness = std::move(x);
      return out;
    }
    if (x.bit_length() > limit) break;
  }
  return out;
}

}  // namespace detail

}  // namespace jumpfall
