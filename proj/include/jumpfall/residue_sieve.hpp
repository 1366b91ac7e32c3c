#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "jumpfall/nat.hpp"

namespace jumpfall {

// Number of odd T-steps among the first j steps (j = 1..k) taken from any
// n congruent to residue mod 2^k.
struct ParityProfile {
  std::uint64_t residue = 0;
  int k = 0;
  std::vector<int> odd_counts;  // odd_counts[j-1] = o_j
};

inline constexpr int kMaxProfileBits = 64;
inline constexpr int kMaxEnumerationBits = 26;

ParityProfile parity_profile(std::uint64_t r, int k);

// A class r mod 2^k is k-persistent when 3^(o_j) > 2^j for every 1 <= j <= k,
// i.e. every large enough member climbs above its start for k consecutive
// steps. This boundary convention yields 286 581 classes for k = 24.
bool is_persistent(std::uint64_t r, int k);

// Depth-first over residues, extending one bit at a time; dead classes are
// never extended. Visits residues in no particular order.
void for_each_persistent(int k, const std::function<void(std::uint64_t)>& visit);
std::uint64_t count_persistent(int k);
// Ascending.
std::vector<std::uint64_t> enumerate_persistent(int k);
// One decimal residue per line, ascending.
void write_persistent(int k, std::ostream& out);

// Membership table for the persistent classes mod 2^k.
class PersistentSet {
 public:
  explicit PersistentSet(int k);

  int k() const { return k_; }
  std::size_t size() const { return residues_.size(); }
  const std::vector<std::uint64_t>& residues() const { return residues_; }
  bool contains_residue(std::uint64_t r) const { return member_[r & mask_]; }
  bool contains(const Nat& n) const { return contains_residue(n.low_bits(static_cast<unsigned>(k_))); }

 private:
  int k_;
  std::uint64_t mask_;
  std::vector<std::uint64_t> residues_;
  std::vector<bool> member_;
};

// Shared 24-persistent set, built on first use.
const PersistentSet& persistent24();
// Process-wide cache keyed by k; thread-safe.
const PersistentSet& cached_persistent_set(int k);

// Exponents (k_1..k_m) of m Syracuse steps from x in 6N+{1,5}.
struct SinaiVector {
  std::vector<int> ks;

  int m() const { return static_cast<int>(ks.size()); }
  std::uint64_t total() const;
  friend bool operator==(const SinaiVector&, const SinaiVector&) = default;
};

// The set { x in 6N+{1,5} : gamma_m(x) = ks }. It is one residue class mod
// 2^(S+1) intersected with 6N+{1,5}, S = k_1+...+k_m; equivalently the two
// classes mod 6*2^S listed in by_mod6 (the one = 1 mod 6 first).
struct SinaiClass {
  Nat residue;         // mod `modulus`
  Nat modulus;         // 2^(S+1)
  Nat full_modulus;    // 6*2^S
  std::array<Nat, 2> by_mod6;

  bool contains(const Nat& x) const;
};

SinaiVector sinai_gamma(const Nat& x, int m);
SinaiClass sinai_class(const SinaiVector& ks);

}  // namespace jumpfall
