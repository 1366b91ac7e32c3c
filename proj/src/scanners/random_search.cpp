#include "jumpfall/scanners/random_search.hpp"

#include "jumpfall/collatz_core.hpp"

namespace jumpfall {

Nat random_odd(std::mt19937_64& engine, int bits) {
  if (bits < 2) throw DomainError("random_odd: bits must be >= 2");
  const int words = (bits + 63) / 64;
  Nat x;
  for (int w = 0; w < words; ++w) {
    Nat word(engine());
    word <<= static_cast<std::uint64_t>(64 * w);
    x += word;
  }
  x = x % Nat::pow2(static_cast<std::uint64_t>(bits));
  const std::uint64_t top = static_cast<std::uint64_t>(bits) - 1;
  if (!x.test_bit(top)) x += Nat::pow2(top);
  if (!x.is_odd()) x += Nat(1);
  return x;
}

std::vector<RandomHit> random_search(const RandomSearchConfig& config) {
  if (config.bits < 2) throw DomainError("random_search: bits must be >= 2");
  std::mt19937_64 engine(config.seed);
  std::vector<RandomHit> hits;
  for (std::uint64_t i = 0; i < config.count; ++i) {
    Nat n = random_odd(engine, config.bits);
    if (n < Nat(3)) continue;
    RandomHit h{n, std::nullopt, std::nullopt};
    const auto ft = falling_time(n, config.budget);
    const auto sft = sfalling_time(n, config.budget);
    if (ft.finite()) h.ft = ft.k;
    if (sft.finite()) h.sft = sft.k;
    const bool hit = !h.ft || !h.sft || *h.ft >= config.ft_threshold || *h.sft >= config.sft_threshold;
    if (hit) hits.push_back(std::move(h));
  }
  return hits;
}

}  // namespace jumpfall
