#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "jumpfall/scanners/records.hpp"

namespace jumpfall {

// Layout (text, LF line endings):
//
//   jumpfall-checkpoint 1
//   scan-id <id>
//   config-hash <hex>
//   chunks-done <count>
//   last-completed <n>            (0 before the first chunk)
//   ft-max <v>
//   sft-max <v>
//   seen-ft <v1,v2,...>           ("-" when empty)
//   records <count>
//   <kind>\t<n>\t<bits>\t<value>  (count lines)
//   end
struct ScanCheckpoint {
  static constexpr int kFormatVersion = 1;

  std::string scan_id;
  std::string config_hash;
  std::uint64_t chunks_done = 0;
  std::uint64_t last_completed = 0;
  int ft_max = 0;
  int sft_max = 0;
  std::vector<int> seen_ft;
  std::vector<RecordEntry> records;

  std::string serialize() const;
  static ScanCheckpoint parse(const std::string& text);
};

// Atomic replace: writes `<path>.tmp`, then renames over path.
void write_checkpoint(const std::filesystem::path& path, const ScanCheckpoint& cp);
std::optional<ScanCheckpoint> read_checkpoint(const std::filesystem::path& path);

}  // namespace jumpfall
