#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace jumpfall {

using u128 = unsigned __int128;

// Arbitrary-precision nonnegative integer. GMP keeps the limb vector
// normalized, so equality of Nat is equality of values.
class Nat {
 public:
  Nat() = default;
  Nat(std::uint64_t v);  // NOLINT(google-explicit-constructor)
  explicit Nat(mpz_class v);

  static Nat from_u128(u128 v);
  // Plain decimal digits only; throws std::invalid_argument otherwise.
  static Nat from_decimal(std::string_view text);
  static Nat pow2(std::uint64_t k);
  static Nat pow(std::uint64_t base, std::uint64_t k);

  std::string to_string() const;

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_odd() const { return mpz_odd_p(v_.get_mpz_t()) != 0; }
  bool is_even() const { return !is_odd(); }

  // Number of binary digits; 0 for zero.
  std::uint64_t bit_length() const;
  std::uint64_t trailing_zeros() const;
  // n mod 2^w for w <= 64.
  std::uint64_t low_bits(unsigned w) const;
  std::uint64_t mod_small(std::uint64_t m) const;
  bool test_bit(std::uint64_t i) const;

  bool fits_u64() const { return bit_length() <= 64; }
  bool fits_u128() const { return bit_length() <= 128; }
  std::uint64_t to_u64() const;
  u128 to_u128() const;

  Nat& operator+=(const Nat& o);
  Nat& operator-=(const Nat& o);  // throws std::domain_error on underflow
  Nat& operator*=(const Nat& o);
  Nat& operator<<=(std::uint64_t k);
  Nat& operator>>=(std::uint64_t k);
  Nat& mul_small(std::uint64_t m);
  Nat& add_small(std::uint64_t a);
  // Floor division and remainder.
  Nat& div_small(std::uint64_t d);
  Nat& div_exact_small(std::uint64_t d);

  friend Nat operator+(Nat a, const Nat& b) { return a += b; }
  friend Nat operator-(Nat a, const Nat& b) { return a -= b; }
  friend Nat operator*(Nat a, const Nat& b) { return a *= b; }
  friend Nat operator<<(Nat a, std::uint64_t k) { return a <<= k; }
  friend Nat operator>>(Nat a, std::uint64_t k) { return a >>= k; }
  friend Nat operator%(const Nat& a, const Nat& m);

  friend bool operator==(const Nat& a, const Nat& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Nat& a, const Nat& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  const mpz_class& mpz() const { return v_; }
  mpz_class& mpz() { return v_; }

 private:
  mpz_class v_;
};

std::ostream& operator<<(std::ostream& os, const Nat& n);

struct NatHash {
  std::size_t operator()(const Nat& n) const;
};

}  // namespace jumpfall
