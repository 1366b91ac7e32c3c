#include "jumpfall/scanners/mersenne.hpp"

#include <algorithm>
#include <ostream>

#include "jumpfall/parallel.hpp"

namespace jumpfall {

namespace {

constexpr std::uint64_t kMersenneBlock = 16;

Nat first_jump_from_pow3(JumpKind kind, Nat pow3) {
  pow3 -= Nat(1);
  if (kind == JumpKind::SyracuseJump) pow3 >>= pow3.trailing_zeros();
  return pow3;
}

MersenneRow probe_one(JumpKind kind, std::uint64_t ell, const Nat& pow3, const FallingBudget& budget) {
  MersenneRow row{ell, std::nullopt, 0};
  Nat n = Nat::pow2(ell);
  n -= Nat(1);
  const std::uint64_t limit = budget.bits_for(ell);
  Nat x = first_jump_from_pow3(kind, pow3);
  for (int j = 1; j <= budget.max_jumps; ++j) {
    if (j > 1) x = jump_of(kind, x);
    row.jumps_used = j;
    if (x < n) {
      row.value = j;
      return row;
    }
    if (x.bit_length() > limit) break;
  }
  return row;
}

}  // namespace

Nat mersenne_first_jump(JumpKind kind, std::uint64_t ell) {
  if (ell < 1) throw DomainError("mersenne_first_jump: ell must be >= 1");
  return first_jump_from_pow3(kind, Nat::pow(3, ell));
}

std::vector<MersenneRow> mersenne_probe(std::uint64_t ell_lo, std::uint64_t ell_hi, JumpKind kind,
                                        const FallingBudget& budget, int workers) {
  if (ell_lo < 2 || ell_lo > ell_hi) throw DomainError("mersenne_probe: need 2 <= ellLo <= ellHi");
  const std::uint64_t count = ell_hi - ell_lo + 1;
  std::vector<MersenneRow> rows(count);
  const std::uint64_t blocks = (count + kMersenneBlock - 1) / kMersenneBlock;
  // 3^l is carried across consecutive l inside a block.
  parallel_for(blocks, workers, [&](std::size_t b) {
    const std::uint64_t first = ell_lo + b * kMersenneBlock;
    const std::uint64_t last = std::min(ell_hi, first + kMersenneBlock - 1);
    Nat pow3 = Nat::pow(3, first);
    for (std::uint64_t ell = first; ell <= last; ++ell) {
      if (ell != first) pow3.mul_small(3);
      rows[ell - ell_lo] = probe_one(kind, ell, pow3, budget);
    }
  });
  return rows;
}

void write_mersenne_tsv(std::ostream& out, const std::vector<MersenneRow>& rows) {
  for (const MersenneRow& r : rows) {
    out << r.ell << '\t';
    if (r.value) {
      out << *r.value;
    } else {
      out << "exhausted";
    }
    out << '\t' << r.jumps_used << '\n';
  }
}

}  // namespace jumpfall
