#pragma once

// Naive single-step reference implementations on raw mpz_class. They share
// no code with the library: no tables, no fixed-width paths, no batching.

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace oracle {

inline mpz_class T(const mpz_class& n) { return mpz_odd_p(n.get_mpz_t()) ? mpz_class((3 * n + 1) / 2) : mpz_class(n / 2); }
inline mpz_class C(const mpz_class& n) { return mpz_odd_p(n.get_mpz_t()) ? mpz_class(3 * n + 1) : mpz_class(n / 2); }

inline mpz_class syr(const mpz_class& x, int* nu = nullptr) {
  mpz_class y = 3 * x + 1;
  int v = 0;
  while (mpz_even_p(y.get_mpz_t())) {
    y /= 2;
    ++v;
  }
  if (nu) *nu = v;
  return y;
}

inline std::uint64_t bits(const mpz_class& n) { return mpz_sizeinbase(n.get_mpz_t(), 2); }

inline mpz_class iterate_T(mpz_class n, std::uint64_t k) {
  for (std::uint64_t i = 0; i < k; ++i) n = T(n);
  return n;
}

inline mpz_class iterate_syr(mpz_class x, std::uint64_t k) {
  for (std::uint64_t i = 0; i < k; ++i) x = syr(x);
  return x;
}

inline std::uint64_t sigma(const mpz_class& n) {
  mpz_class x = n;
  std::uint64_t s = 0;
  do {
    x = T(x);
    ++s;
  } while (x >= n);
  return s;
}

inline std::uint64_t glide(const mpz_class& n) {
  mpz_class x = n;
  std::uint64_t s = 0;
  do {
    x = C(x);
    ++s;
  } while (x >= n);
  return s;
}

inline mpz_class jump(bool syracuse, const mpz_class& n, int h = 1) {
  const std::uint64_t steps = static_cast<std::uint64_t>(h) * bits(n);
  return syracuse ? iterate_syr(n, steps) : iterate_T(n, steps);
}

// Falling time with a jump cap only; no bit cap.
inline std::optional<int> falling_time(bool syracuse, const mpz_class& n, int h = 1, int max_jumps = 1000) {
  mpz_class x = n;
  for (int k = 1; k <= max_jumps; ++k) {
    x = jump(syracuse, x, h);
    if (x < n) return k;
  }
  return std::nullopt;
}

inline std::vector<int> sinai_gamma(mpz_class x, int m) {
  std::vector<int> ks;
  for (int i = 0; i < m; ++i) {
    int nu = 0;
    x = syr(x, &nu);
    ks.push_back(nu);
  }
  return ks;
}

}  // namespace oracle
