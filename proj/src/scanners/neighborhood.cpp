#include "jumpfall/scanners/neighborhood.hpp"

#include <algorithm>
#include <set>

#include "jumpfall/detail/falling_fixed.hpp"
#include "jumpfall/residue_sieve.hpp"

namespace jumpfall {

namespace {

struct U128Ops {
  using Node = u128;

  static Node from(const Nat& n) { return n.to_u128(); }
  static Nat to_nat(Node n) { return Nat::from_u128(n); }
  static std::uint64_t low64(Node n) { return static_cast<std::uint64_t>(n); }
  static bool small(Node n) { return n < 3; }

  template <class Out>
  static void preimages(Node y, Out&& out) {
    if (y % 3 == 2) out((2 * y - 1) / 3);
    out(2 * y);
  }

  static int ft(Node n, const FallingBudget& budget) {
    const auto bits = static_cast<std::uint64_t>(detail::bit_width_of(n));
    const auto r = detail::falling_time_fixed(JumpKind::Jump, n, 1, budget.max_jumps, budget.bits_for(bits),
                                              default_step_table());
    if (r.status == detail::FixedStatus::Finite) return r.k;
    if (r.status == detail::FixedStatus::Exhausted) return -1;
    const auto slow = falling_time(to_nat(n), budget);
    return slow.finite() ? slow.k : -1;
  }
};

struct NatOps {
  using Node = Nat;

  static Node from(const Nat& n) { return n; }
  static Nat to_nat(const Node& n) { return n; }
  static std::uint64_t low64(const Node& n) { return n.low_bits(64); }
  static bool small(const Node& n) { return n < Nat(3); }

  template <class Out>
  static void preimages(const Node& y, Out&& out) {
    for (Nat& p : preimages_T(y)) out(std::move(p));
  }

  static int ft(const Node& n, const FallingBudget& budget) {
    const auto r = falling_time(n, budget);
    return r.finite() ? r.k : -1;
  }
};

template <class Ops>
NeighborhoodResult explore(const NeighborhoodConfig& cfg, const std::vector<Nat>& orbit) {
  using Node = typename Ops::Node;
  const PersistentSet* filter = cfg.persist_k > 0 ? &cached_persistent_set(cfg.persist_k) : nullptr;
  const std::uint64_t mask = filter ? (std::uint64_t{1} << cfg.persist_k) - 1 : 0;

  std::vector<Node> orbit_nodes;
  for (const Nat& p : orbit) orbit_nodes.push_back(Ops::from(p));
  std::vector<Node> sorted_orbit = orbit_nodes;
  std::sort(sorted_orbit.begin(), sorted_orbit.end());
  auto on_orbit = [&](const Node& n) { return std::binary_search(sorted_orbit.begin(), sorted_orbit.end(), n); };

  NeighborhoodResult result;
  std::vector<std::pair<Node, int>> hits;
  auto consider = [&](const Node& n) {
    if (Ops::small(n)) return;
    if (filter && !filter->contains_residue(Ops::low64(n) & mask)) return;
    const int ft = Ops::ft(n, cfg.budget);
    if (ft >= 0 && ft < cfg.ft_threshold) return;
    hits.emplace_back(n, ft);
  };

  for (const Node& root : orbit_nodes) {
    std::uint64_t visited = 1;
    consider(root);
    std::vector<Node> level{root};
    for (int depth = 1; depth <= cfg.i_max && !level.empty(); ++depth) {
      std::vector<Node> next;
      bool full = false;
      for (const Node& y : level) {
        Ops::preimages(y, [&](Node m) {
          if (full || on_orbit(m)) return;
          if (visited >= cfg.node_cap) {
            full = true;
            return;
          }
          ++visited;
          next.push_back(std::move(m));
        });
        if (full) break;
      }
      if (full) {
        // Keep only complete levels.
        result.truncated = true;
        visited -= next.size();
        break;
      }
      for (const Node& m : next) consider(m);
      level = std::move(next);
    }
    result.nodes_visited += visited;
  }

  std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  hits.erase(std::unique(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
             hits.end());
  for (auto& [n, ft] : hits) result.hits.push_back({Ops::to_nat(n), ft});
  return result;
}

}  // namespace

NeighborhoodResult neighborhood(const NeighborhoodConfig& config) {
  if (config.seed < Nat(3)) throw DomainError("neighborhood: seed must be >= 3");
  if (config.i_max < 0 || config.j_max < 0) throw DomainError("neighborhood: depths must be >= 0");
  if (config.persist_k < 0 || config.persist_k > kMaxEnumerationBits) {
    throw DomainError("neighborhood: persistK must be in [0, " + std::to_string(kMaxEnumerationBits) + "]");
  }
  if (config.node_cap < 1) throw DomainError("neighborhood: node cap must be >= 1");

  // Forward orbit, stopping at the first repeated value.
  std::vector<Nat> orbit{config.seed};
  std::set<Nat> seen{config.seed};
  for (int j = 1; j <= config.j_max; ++j) {
    Nat next = step_T(orbit.back());
    if (!seen.insert(next).second) break;
    orbit.push_back(std::move(next));
  }
  std::uint64_t max_bits = 0;
  for (const Nat& p : orbit) max_bits = std::max(max_bits, p.bit_length());
  // A backward step at most doubles a value.
  if (max_bits + static_cast<std::uint64_t>(config.i_max) <= 128) return explore<U128Ops>(config, orbit);
  return explore<NatOps>(config, orbit);
}

}  // namespace jumpfall
