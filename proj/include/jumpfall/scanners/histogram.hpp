#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "jumpfall/jumps.hpp"

namespace jumpfall {

enum class Population { Odd, Mod4Eq1, Mod4Eq3, Persistent24 };

std::string_view to_string(Population p);
Population parse_population(std::string_view text);

// Falling-time split of one population inside [2^ell, 2^(ell+1) - 1].
struct HistogramRow {
  int ell = 0;
  std::uint64_t ft1 = 0;
  std::uint64_t ft2 = 0;
  std::uint64_t ft3plus = 0;

  std::uint64_t total() const { return ft1 + ft2 + ft3plus; }
  double p1() const { return static_cast<double>(ft1) / static_cast<double>(total()); }
  double p2() const { return static_cast<double>(ft2) / static_cast<double>(total()); }
  double p3plus() const { return static_cast<double>(ft3plus) / static_cast<double>(total()); }

  friend bool operator==(const HistogramRow&, const HistogramRow&) = default;
};

inline constexpr int kMaxHistogramEll = 62;

std::vector<HistogramRow> histogram(int ell_lo, int ell_hi, Population population, const FallingBudget& budget = {},
                                    int workers = 1);

// Header `l,a,b,c`; a, b, c are the proportions of ft = 1, ft = 2, ft >= 3.
void write_histogram_csv(std::ostream& out, const std::vector<HistogramRow>& rows);
void write_histogram_jsonl(std::ostream& out, const std::vector<HistogramRow>& rows);

}  // namespace jumpfall
