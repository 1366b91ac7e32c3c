#include <doctest.h>

#include <random>

#include "jumpfall/jumps.hpp"
#include "oracle.hpp"

using namespace jumpfall;

namespace {

const Nat g30 = Nat::from_decimal("1008932249296231");
const Nat g32 = Nat::from_decimal("180352746940718527");

std::vector<Nat> nats(std::initializer_list<std::uint64_t> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("jump examples") {
  CHECK(jump(27) == Nat(71));
  CHECK(jump(71) == Nat(137));
  CHECK(jump(Nat::pow2(12) - Nat(1)) == Nat::pow(3, 12) - Nat(1));
  CHECK(jump(1) == Nat(2));
  CHECK(jump(2) == Nat(2));
  CHECK(jump(199) == Nat(190));
  CHECK_THROWS_AS(jump(0), DomainError);
}

TEST_CASE("jump_h") {
  CHECK(jump_h(27, 1) == Nat(71));
  CHECK(jump_h(3, 2) == Nat(2));
  CHECK(jump_h(g30, 18) < g30);
  CHECK_THROWS_AS(jump_h(27, 0), DomainError);
}

TEST_CASE("sjump") {
  CHECK(sjump(27) == Nat(107));
  CHECK(sjump(1) == Nat(1));
  CHECK(sjump(3) == Nat(1));
  CHECK(sjump_h(27, 1) == Nat(107));
  CHECK(sjump_h(g30, 12) < g30);
  CHECK(sjump_h(7, 2).mpz() == oracle::iterate_syr(7, 6));
  CHECK_THROWS_AS(sjump(10), DomainError);
  CHECK_THROWS_AS(sjump_h(10, 2), DomainError);
  CHECK_THROWS_AS(sjump_h(7, 0), DomainError);
}

TEST_CASE("falling time values") {
  CHECK(falling_time(27).k == 8);
  CHECK(falling_time(41).k == 8);
  CHECK(falling_time(43).k == 2);
  CHECK(falling_time(111).k == 4);
  CHECK(falling_time(103).k == 5);
  CHECK(falling_time(71).k == 6);
  CHECK(falling_time(55).k == 7);
  CHECK(falling_time(217740015).k == 12);
  CHECK(falling_time(199).k == 1);
  CHECK(falling_time(199).witness == Nat(190));
  CHECK_THROWS_AS(falling_time(2), DomainError);
}

TEST_CASE("syracuse falling time values") {
  CHECK(sfalling_time(27).k == 6);
  CHECK(sfalling_time(199).k == 5);
  CHECK(sfalling_time(7).k == 2);
  CHECK(sfalling_time(Nat::pow2(24) - Nat(1)).k == 4);
  CHECK_THROWS_AS(sfalling_time(1), DomainError);
  CHECK_THROWS_AS(sfalling_time(8), DomainError);
}

TEST_CASE("h-falling times") {
  CHECK(falling_time_h(27, 1).k == falling_time(27).k);
  CHECK(falling_time_h(g32, 18).k == 1);
  CHECK(sfalling_time_h(g32, 12).k == 1);
  CHECK_THROWS_AS(falling_time_h(27, 0), DomainError);
}

TEST_CASE("budget exhaustion") {
  FallingBudget tight{3, std::nullopt};
  const FallingTimeResult r = falling_time(27, tight);
  CHECK_FALSE(r.finite());
  CHECK(r.outcome == FallingTimeResult::Outcome::BudgetExhausted);
  CHECK(r.jumps_used == 3);
  FallingBudget narrow{64, 8};
  const FallingTimeResult b = falling_time(27, narrow);
  CHECK_FALSE(b.finite());
  CHECK(falling_time_value(JumpKind::Jump, 27, 1, tight) == std::nullopt);
  CHECK(falling_time_value(JumpKind::Jump, 27, 1, {}) == 8);
}

TEST_CASE("orbit traces") {
  const JumpTrace t = jump_orbit(27, JumpKind::Jump, 1, 11);
  CHECK(t.terms == nats({27, 71, 137, 395, 566, 3644, 650, 53, 8, 2, 2}));
  REQUIRE(t.steps_per_term.size() == t.terms.size() - 1);
  for (std::size_t i = 0; i + 1 < t.terms.size(); ++i) {
    CHECK(t.steps_per_term[i] == t.terms[i].bit_length());
    CHECK(oracle::iterate_T(t.terms[i].mpz(), t.steps_per_term[i]) == t.terms[i + 1].mpz());
  }
  const JumpTrace s = jump_orbit(27, JumpKind::SyracuseJump, 1, 8);
  CHECK(s.terms == nats({27, 107, 233, 377, 911, 53, 1, 1}));
  const JumpTrace u = jump_orbit(199, JumpKind::Jump, 1, 2);
  CHECK(u.terms[1] == Nat(190));
  CHECK(u.steps_per_term[0] == 8);
  const JumpTrace h = jump_orbit(27, JumpKind::Jump, 3, 4);
  CHECK(h.steps_per_term[0] == 15);
  const JumpTrace capped = jump_orbit(27, JumpKind::Jump, 1, 20, 8);
  CHECK(capped.bits_exceeded);
  CHECK_THROWS_AS(jump_orbit(4, JumpKind::SyracuseJump, 1, 3), DomainError);
}

TEST_CASE("witness is the first term below the start") {
  for (std::uint64_t n = 3; n < 3000; n += 4) {
    const FallingTimeResult r = falling_time(n);
    REQUIRE(r.finite());
    const JumpTrace t = jump_orbit(n, JumpKind::Jump, 1, r.k + 1);
    for (int i = 1; i < r.k; ++i) REQUIRE(t.terms[static_cast<std::size_t>(i)] >= Nat(n));
    REQUIRE(t.terms[static_cast<std::size_t>(r.k)] == r.witness);
    REQUIRE(r.witness < Nat(n));
  }
}

TEST_CASE("jp(2n) = jp(n)") {
  for (std::uint64_t n = 1; n <= 100000; ++n) REQUIRE(jump(2 * n) == jump(n));
}

TEST_CASE("ft(2m) follows the shared orbit of m") {
  // The orbits of m and 2m coincide after one jump, so ft(2m) is the least k
  // with jp^k(m) < 2m. Plain equality ft(2m) = ft(m) fails, e.g. m = 7.
  std::uint64_t unequal = 0;
  for (std::uint64_t m = 3; m <= 10000; ++m) {
    const int k2 = falling_time(2 * m).k;
    const int k1 = falling_time(m).k;
    const JumpTrace t = jump_orbit(m, JumpKind::Jump, 1, k1 + 1);
    int expected = 1;
    while (!(t.terms[static_cast<std::size_t>(expected)] < Nat(2 * m))) ++expected;
    REQUIRE(k2 == expected);
    REQUIRE(k2 <= k1);
    if (k2 != k1) ++unequal;
  }
  CHECK(falling_time(Nat(14)).k == 2);
  CHECK(falling_time(Nat(7)).k == 3);
  CHECK(unequal == 843);
}

TEST_CASE("syracuse orbits stay odd") {
  for (std::uint64_t n = 3; n < 100000; n += 2) {
    Nat x = n;
    for (int i = 0; i < 3; ++i) {
      x = sjump(x);
      REQUIRE(x.is_odd());
    }
  }
}

TEST_CASE("falling times agree with the naive reference") {
  for (std::uint64_t n = 3; n < 100000; n += 4) {
    REQUIRE(falling_time(n).k == *oracle::falling_time(false, n));
    REQUIRE(sfalling_time(n).k == *oracle::falling_time(true, n));
  }
}

TEST_CASE("fixed-width and Nat falling times are identical") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 600; ++i) {
    const int bits = 3 + static_cast<int>(rng() % 140);
    Nat n = Nat::pow2(static_cast<std::uint64_t>(bits - 1)) + Nat(rng()) % Nat::pow2(static_cast<std::uint64_t>(bits - 1));
    if (n.is_even()) n += Nat(1);
    for (JumpKind kind : {JumpKind::Jump, JumpKind::SyracuseJump}) {
      const int h = 1 + static_cast<int>(rng() % 3);
      const FallingTimeResult fast = falling_time_of(kind, n, h);
      const FallingTimeResult slow = detail::falling_time_big(kind, n, h, {}, true);
      REQUIRE(fast.outcome == slow.outcome);
      REQUIRE(fast.k == slow.k);
      REQUIRE(fast.jumps_used == slow.jumps_used);
      REQUIRE(fast.witness == slow.witness);
    }
  }
}
