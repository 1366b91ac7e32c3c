#include "jumpfall/nat.hpp"

#include <functional>
#include <ostream>
#include <stdexcept>

namespace jumpfall {

Nat::Nat(std::uint64_t v) {
  mpz_import(v_.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
}

Nat::Nat(mpz_class v) : v_(std::move(v)) {
  if (sgn(v_) < 0) throw std::domain_error("Nat: negative value");
}

Nat Nat::from_u128(u128 v) {
  const std::uint64_t words[2] = {static_cast<std::uint64_t>(v),
                                  static_cast<std::uint64_t>(v >> 64)};
  Nat n;
  mpz_import(n.v_.get_mpz_t(), 2, -1, sizeof words[0], 0, 0, words);
  return n;
}

Nat Nat::from_decimal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
    }
  }
  Nat n;
  n.v_.set_str(std::string(text), 10);
  return n;
}

Nat Nat::pow2(std::uint64_t k) {
  Nat n;
  mpz_setbit(n.v_.get_mpz_t(), k);
  return n;
}

Nat Nat::pow(std::uint64_t base, std::uint64_t k) {
  Nat n;
  mpz_ui_pow_ui(n.v_.get_mpz_t(), base, k);
  return n;
}

std::string Nat::to_string() const { return v_.get_str(10); }

std::uint64_t Nat::bit_length() const {
  if (is_zero()) return 0;
  return mpz_sizeinbase(v_.get_mpz_t(), 2);
}

std::uint64_t Nat::trailing_zeros() const {
  if (is_zero()) return 0;
  return mpz_scan1(v_.get_mpz_t(), 0);
}

std::uint64_t Nat::low_bits(unsigned w) const {
  const mpz_srcptr p = v_.get_mpz_t();
  if (mpz_size(p) == 0) return 0;
  const std::uint64_t limb = mpz_getlimbn(p, 0);
  return w >= 64 ? limb : (limb & ((std::uint64_t{1} << w) - 1));
}

std::uint64_t Nat::mod_small(std::uint64_t m) const {
  if (m == 0) throw std::domain_error("modulus zero");
  return mpz_fdiv_ui(v_.get_mpz_t(), m);
}

bool Nat::test_bit(std::uint64_t i) const { return mpz_tstbit(v_.get_mpz_t(), i) != 0; }

std::uint64_t Nat::to_u64() const {
  if (!fits_u64()) throw std::overflow_error("Nat does not fit in 64 bits");
  return low_bits(64);
}

u128 Nat::to_u128() const {
  if (!fits_u128()) throw std::overflow_error("Nat does not fit in 128 bits");
  const mpz_srcptr p = v_.get_mpz_t();
  const std::size_t sz = mpz_size(p);
  u128 lo = sz > 0 ? mpz_getlimbn(p, 0) : 0;
  u128 hi = sz > 1 ? mpz_getlimbn(p, 1) : 0;
  return (hi << 64) | lo;
}

Nat& Nat::operator+=(const Nat& o) {
  v_ += o.v_;
  return *this;
}

Nat& Nat::operator-=(const Nat& o) {
  if (cmp(v_, o.v_) < 0) throw std::domain_error("Nat subtraction underflow");
  v_ -= o.v_;
  return *this;
}

Nat& Nat::operator*=(const Nat& o) {
  v_ *= o.v_;
  return *this;
}

Nat& Nat::operator<<=(std::uint64_t k) {
  mpz_mul_2exp(v_.get_mpz_t(), v_.get_mpz_t(), k);
  return *this;
}

Nat& Nat::operator>>=(std::uint64_t k) {
  mpz_tdiv_q_2exp(v_.get_mpz_t(), v_.get_mpz_t(), k);
  return *this;
}

Nat& Nat::mul_small(std::uint64_t m) {
  mpz_mul_ui(v_.get_mpz_t(), v_.get_mpz_t(), m);
  return *this;
}

Nat& Nat::add_small(std::uint64_t a) {
  mpz_add_ui(v_.get_mpz_t(), v_.get_mpz_t(), a);
  return *this;
}

Nat& Nat::div_small(std::uint64_t d) {
  if (d == 0) throw std::domain_error("division by zero");
  mpz_fdiv_q_ui(v_.get_mpz_t(), v_.get_mpz_t(), d);
  return *this;
}

Nat& Nat::div_exact_small(std::uint64_t d) {
  if (d == 0) throw std::domain_error("division by zero");
  mpz_divexact_ui(v_.get_mpz_t(), v_.get_mpz_t(), d);
  return *this;
}

Nat operator%(const Nat& a, const Nat& m) {
  if (m.is_zero()) throw std::domain_error("modulus zero");
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.v_.get_mpz_t(), m.v_.get_mpz_t());
  return Nat(std::move(r));
}

std::ostream& operator<<(std::ostream& os, const Nat& n) { return os << n.to_string(); }

std::size_t NatHash::operator()(const Nat& n) const {
  const mpz_srcptr p = n.mpz().get_mpz_t();
  std::size_t h = mpz_size(p);
  for (std::size_t i = 0; i < mpz_size(p); ++i) {
    h ^= std::hash<std::uint64_t>{}(mpz_getlimbn(p, i)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

}  // namespace jumpfall
