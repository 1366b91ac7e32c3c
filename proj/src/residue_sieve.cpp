#include "jumpfall/residue_sieve.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>

#include "jumpfall/collatz_core.hpp"

namespace jumpfall {

namespace {

void check_profile_args(std::uint64_t r, int k) {
  if (k < 1 || k > kMaxProfileBits) {
    throw DomainError("parity profile: k must be in [1, " + std::to_string(kMaxProfileBits) + "]");
  }
  if (k < 64 && r >> k) throw DomainError("parity profile: residue must be < 2^k");
}

void check_enumeration_k(int k) {
  if (k < 1 || k > kMaxEnumerationBits) {
    throw DomainError("persistent enumeration: k must be in [1, " + std::to_string(kMaxEnumerationBits) + "]");
  }
}

u128 pow3_u128(int e) {
  u128 p = 1;
  for (int i = 0; i < e; ++i) p *= 3;
  return p;
}

struct Dfs {
  int k;
  std::vector<std::uint64_t> pow3;
  const std::function<void(std::uint64_t)>& visit;

  // r: residue mod 2^j; value: T^(j)(r); odd: o_j.
  void extend(std::uint64_t r, int j, int odd, std::uint64_t value) const {
    if (j == k) {
      visit(r);
      return;
    }
    for (std::uint64_t bit = 0; bit < 2; ++bit) {
      std::uint64_t v = pow3[static_cast<std::size_t>(odd)] * bit + value;
      int o = odd;
      if (v & 1) {
        v = v + (v >> 1) + 1;
        ++o;
      } else {
        v >>= 1;
      }
      const int next = j + 1;
      if (pow3[static_cast<std::size_t>(o)] <= (std::uint64_t{1} << next)) continue;
      extend(r | (bit << j), next, o, v);
    }
  }
};

}  // namespace

ParityProfile parity_profile(std::uint64_t r, int k) {
  check_profile_args(r, k);
  ParityProfile p{r, k, {}};
  p.odd_counts.reserve(static_cast<std::size_t>(k));
  u128 v = r;
  int odd = 0;
  for (int j = 1; j <= k; ++j) {
    if (v & 1) {
      v = v + (v >> 1) + 1;
      ++odd;
    } else {
      v >>= 1;
    }
    p.odd_counts.push_back(odd);
  }
  return p;
}

bool is_persistent(std::uint64_t r, int k) {
  const ParityProfile p = parity_profile(r, k);
  for (int j = 1; j <= k; ++j) {
    if (pow3_u128(p.odd_counts[static_cast<std::size_t>(j) - 1]) <= (u128{1} << j)) return false;
  }
  return true;
}

void for_each_persistent(int k, const std::function<void(std::uint64_t)>& visit) {
  check_enumeration_k(k);
  Dfs dfs{k, {}, visit};
  dfs.pow3.resize(static_cast<std::size_t>(k) + 1);
  dfs.pow3[0] = 1;
  for (std::size_t i = 1; i < dfs.pow3.size(); ++i) dfs.pow3[i] = dfs.pow3[i - 1] * 3;
  dfs.extend(0, 0, 0, 0);
}

std::uint64_t count_persistent(int k) {
  std::uint64_t count = 0;
  for_each_persistent(k, [&count](std::uint64_t) { ++count; });
  return count;
}

std::vector<std::uint64_t> enumerate_persistent(int k) {
  std::vector<std::uint64_t> out;
  for_each_persistent(k, [&out](std::uint64_t r) { out.push_back(r); });
  std::sort(out.begin(), out.end());
  return out;
}

void write_persistent(int k, std::ostream& out) {
  for (const std::uint64_t r : enumerate_persistent(k)) out << r << '\n';
}

PersistentSet::PersistentSet(int k)
    : k_(k), mask_((std::uint64_t{1} << k) - 1), residues_(enumerate_persistent(k)), member_(mask_ + 1, false) {
  for (const std::uint64_t r : residues_) member_[r] = true;
}

const PersistentSet& persistent24() {
  static const PersistentSet set(24);
  return set;
}

const PersistentSet& cached_persistent_set(int k) {
  if (k == 24) return persistent24();
  static std::mutex mutex;
  static std::vector<std::unique_ptr<PersistentSet>> cache;
  std::lock_guard lock(mutex);
  for (const auto& s : cache) {
    if (s->k() == k) return *s;
  }
  cache.push_back(std::make_unique<PersistentSet>(k));
  return *cache.back();
}

std::uint64_t SinaiVector::total() const {
  std::uint64_t s = 0;
  for (int k : ks) s += static_cast<std::uint64_t>(k);
  return s;
}

bool SinaiClass::contains(const Nat& x) const {
  const std::uint64_t m6 = x.mod_small(6);
  return (m6 == 1 || m6 == 5) && x % modulus == residue;
}

SinaiVector sinai_gamma(const Nat& x, int m) {
  if (m < 1) throw DomainError("sinai_gamma: m must be >= 1");
  const std::uint64_t m6 = x.mod_small(6);
  if (m6 != 1 && m6 != 5) throw DomainError("sinai_gamma: x must be congruent to 1 or 5 mod 6");
  SinaiVector out;
  out.ks.reserve(static_cast<std::size_t>(m));
  Nat cur = x;
  for (int i = 0; i < m; ++i) {
    SyrStep s = step_syr(cur);
    out.ks.push_back(s.nu);
    cur = std::move(s.value);
  }
  return out;
}

SinaiClass sinai_class(const SinaiVector& ks) {
  if (ks.ks.empty()) throw DomainError("sinai_class: empty vector");
  // Required T-parities of the first S+1 iterates: each Syracuse step with
  // exponent k is one odd step followed by k-1 even ones, and x_m is odd.
  std::vector<bool> parity;
  for (int k : ks.ks) {
    if (k < 1) throw DomainError("sinai_class: exponents must be >= 1");
    parity.push_back(true);
    parity.insert(parity.end(), static_cast<std::size_t>(k) - 1, false);
  }
  parity.push_back(true);

  // Lift one bit at a time: with r the residue so far and value = T^(j)(r),
  // T^(j)(r + b*2^j) = 3^odd * b + value, whose parity is b xor value.
  Nat r;
  Nat value;
  Nat pow3(1);
  for (std::size_t j = 0; j < parity.size(); ++j) {
    const bool bit = parity[j] != value.is_odd();
    if (bit) {
      r += Nat::pow2(j);
      value += pow3;
    }
    if (value.is_odd()) {
      value.mul_small(3).add_small(1);
      pow3.mul_small(3);
    }
    value >>= 1;
  }

  SinaiClass out;
  const std::uint64_t s = ks.total();
  out.modulus = Nat::pow2(s + 1);
  out.residue = std::move(r);
  out.full_modulus = Nat::pow2(s).mul_small(6);
  for (std::uint64_t t = 0; t < 3; ++t) {
    Nat x = out.modulus;
    x.mul_small(t);
    x += out.residue;
    const std::uint64_t m3 = x.mod_small(3);
    if (m3 == 1) out.by_mod6[0] = x;
    if (m3 == 2) out.by_mod6[1] = x;
  }
  return out;
}

}  // namespace jumpfall
