#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jumpfall {

struct GlideRecordEntry {
  std::string_view name;
  std::string_view n;  // decimal
  int bit_length;
  int glide;
  int sigma;
  int ft;
  int sft;
};

// The ten largest known glide records g25..g34 with their bit length,
// glide, stopping time, falling time and Syracuse falling time.
std::span<const GlideRecordEntry> glide_records();

inline constexpr int kGlideJumpH = 18;
inline constexpr int kGlideSyracuseH = 12;

struct GlideMismatch {
  std::string name;
  std::string field;
  std::string expected;
  std::string computed;
};

struct GlideReport {
  int records_checked = 0;
  std::vector<GlideMismatch> mismatches;

  bool ok() const { return mismatches.empty(); }
};

// Recomputes every column plus ft_18 and sft_12 (both expected to be 1).
GlideReport verify_glide_records(std::span<const GlideRecordEntry> records = glide_records());

}  // namespace jumpfall
