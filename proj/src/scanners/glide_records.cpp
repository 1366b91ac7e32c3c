#include "jumpfall/scanners/glide_records.hpp"

#include <array>

#include "jumpfall/jumps.hpp"

namespace jumpfall {

namespace {

constexpr std::array<GlideRecordEntry, 10> kRecords{{
    {"g25", "2081751768559", 41, 988, 606, 12, 9},
    {"g26", "13179928405231", 44, 1122, 688, 14, 8},
    {"g27", "31835572457967", 45, 1161, 712, 13, 8},
    {"g28", "70665924117439", 47, 1177, 722, 13, 8},
    {"g29", "739448869367967", 50, 1187, 728, 12, 8},
    {"g30", "1008932249296231", 50, 1445, 886, 15, 10},
    {"g31", "118303688851791519", 57, 1471, 902, 12, 8},
    {"g32", "180352746940718527", 58, 1575, 966, 15, 10},
    {"g33", "1236472189813512351", 61, 1614, 990, 14, 9},
    {"g34", "2602714556700227743", 62, 1639, 1005, 13, 8},
}};

void compare(GlideReport& report, std::string_view name, const char* field, long long expected,
             std::optional<long long> computed) {
  if (computed && *computed == expected) return;
  report.mismatches.push_back(
      {std::string(name), field, std::to_string(expected), computed ? std::to_string(*computed) : "exhausted"});
}

std::optional<long long> as_value(const BudgetedResult& r) {
  if (!r.value) return std::nullopt;
  return static_cast<long long>(*r.value);
}

std::optional<long long> as_value(const FallingTimeResult& r) {
  if (!r.finite()) return std::nullopt;
  return r.k;
}

}  // namespace

std::span<const GlideRecordEntry> glide_records() { return kRecords; }

GlideReport verify_glide_records(std::span<const GlideRecordEntry> records) {
  GlideReport report;
  for (const GlideRecordEntry& e : records) {
    ++report.records_checked;
    Nat n;
    try {
      n = Nat::from_decimal(e.n);
    } catch (const std::invalid_argument&) {
      report.mismatches.push_back({std::string(e.name), "n", std::string(e.n), "unparseable"});
      continue;
    }
    compare(report, e.name, "bits", e.bit_length, static_cast<long long>(n.bit_length()));
    compare(report, e.name, "glide", e.glide, as_value(glide(n)));
    compare(report, e.name, "sigma", e.sigma, as_value(stopping_time(n)));
    compare(report, e.name, "ft", e.ft, as_value(falling_time(n)));
    compare(report, e.name, "sft", e.sft, as_value(sfalling_time(n)));
    compare(report, e.name, "ft_18", 1, as_value(falling_time_h(n, kGlideJumpH)));
    compare(report, e.name, "sft_12", 1, as_value(sfalling_time_h(n, kGlideSyracuseH)));
  }
  return report;
}

}  // namespace jumpfall
