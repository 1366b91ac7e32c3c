#include "jumpfall/scanners/histogram.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <string>

#include "jumpfall/parallel.hpp"
#include "jumpfall/residue_sieve.hpp"
#include "jumpfall/scanners/records.hpp"

namespace jumpfall {

namespace {

constexpr std::uint64_t kHistogramChunk = std::uint64_t{1} << 20;

struct Counts {
  std::uint64_t ft1 = 0;
  std::uint64_t ft2 = 0;
  std::uint64_t ft3plus = 0;
};

void tally(Counts& c, std::uint64_t n, const FallingBudget& budget) {
  const auto v = falling_time_value(JumpKind::Jump, n, 1, budget);
  if (!v) throw BudgetExhaustedError("histogram: falling-time budget exhausted at n = " + std::to_string(n));
  if (*v == 1) {
    ++c.ft1;
  } else if (*v == 2) {
    ++c.ft2;
  } else {
    ++c.ft3plus;
  }
}

// Members of the population in [a, b], ascending.
template <class Fn>
void for_each_member(Population p, std::uint64_t a, std::uint64_t b, Fn&& fn) {
  if (p == Population::Persistent24) {
    for_each_in_filter(ScanFilter::persistent(24), a, b, fn);
    return;
  }
  const std::uint64_t step = p == Population::Odd ? 2 : 4;
  const std::uint64_t want = p == Population::Mod4Eq3 ? 3 : 1;
  std::uint64_t n = a;
  while (n <= b && n % step != want % step) ++n;
  for (; n <= b; n += step) {
    fn(n);
    if (b - n < step) break;
  }
}

}  // namespace

std::string_view to_string(Population p) {
  switch (p) {
    case Population::Odd:
      return "odd";
    case Population::Mod4Eq1:
      return "mod4eq1";
    case Population::Mod4Eq3:
      return "mod4eq3";
    case Population::Persistent24:
      return "persistent24";
  }
  return "?";
}

Population parse_population(std::string_view text) {
  for (Population p : {Population::Odd, Population::Mod4Eq1, Population::Mod4Eq3, Population::Persistent24}) {
    if (text == to_string(p)) return p;
  }
  throw std::invalid_argument("unknown population '" + std::string(text) + "'");
}

std::vector<HistogramRow> histogram(int ell_lo, int ell_hi, Population population, const FallingBudget& budget,
                                    int workers) {
  if (ell_lo < 2 || ell_lo > ell_hi) throw DomainError("histogram: need 2 <= ellLo <= ellHi");
  if (ell_hi > kMaxHistogramEll) {
    throw DomainError("histogram: ellHi must be <= " + std::to_string(kMaxHistogramEll));
  }
  if (population == Population::Persistent24 && ell_lo < 24) {
    throw DomainError("histogram: persistent24 needs ellLo >= 24");
  }
  std::vector<HistogramRow> rows;
  for (int ell = ell_lo; ell <= ell_hi; ++ell) {
    const std::uint64_t lo = std::uint64_t{1} << ell;
    const std::uint64_t hi = (lo << 1) - 1;
    const std::uint64_t chunks = (hi - lo) / kHistogramChunk + 1;
    std::vector<Counts> partial(chunks);
    parallel_for(chunks, workers, [&](std::size_t i) {
      const std::uint64_t a = lo + i * kHistogramChunk;
      const std::uint64_t b = std::min(hi, a + kHistogramChunk - 1);
      Counts c;
      for_each_member(population, a, b, [&](std::uint64_t n) { tally(c, n, budget); });
      partial[i] = c;
    });
    HistogramRow row;
    row.ell = ell;
    for (const Counts& c : partial) {
      row.ft1 += c.ft1;
      row.ft2 += c.ft2;
      row.ft3plus += c.ft3plus;
    }
    if (row.total() == 0) {
      throw DomainError("histogram: empty population at l = " + std::to_string(ell));
    }
    rows.push_back(row);
  }
  return rows;
}

void write_histogram_csv(std::ostream& out, const std::vector<HistogramRow>& rows) {
  const auto old = out.precision(17);
  out << "l,a,b,c\n";
  for (const HistogramRow& r : rows) out << r.ell << ',' << r.p1() << ',' << r.p2() << ',' << r.p3plus() << '\n';
  out.precision(old);
}

void write_histogram_jsonl(std::ostream& out, const std::vector<HistogramRow>& rows) {
  const auto old = out.precision(17);
  for (const HistogramRow& r : rows) {
    out << "{\"l\":" << r.ell << ",\"ft1\":" << r.ft1 << ",\"ft2\":" << r.ft2 << ",\"ft3plus\":" << r.ft3plus
        << ",\"total\":" << r.total() << ",\"a\":" << r.p1() << ",\"b\":" << r.p2() << ",\"c\":" << r.p3plus()
        << "}\n";
  }
  out.precision(old);
}

}  // namespace jumpfall
