#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jumpfall/jumps.hpp"
#include "jumpfall/nat.hpp"

namespace jumpfall {

enum class RecordKind { FtRecord, NewFt, SftRecord };

std::string_view to_string(RecordKind kind);
RecordKind parse_record_kind(std::string_view text);

struct RecordEntry {
  Nat n;
  std::uint64_t bit_length = 0;
  int value = 0;
  RecordKind kind = RecordKind::FtRecord;

  friend bool operator==(const RecordEntry&, const RecordEntry&) = default;
};

enum class FilterKind { Mod4Eq3, Odd, Persistent };

struct ScanFilter {
  FilterKind kind = FilterKind::Mod4Eq3;
  int persist_k = 24;  // only for Persistent

  static ScanFilter mod4eq3() { return {}; }
  static ScanFilter odd() { return {FilterKind::Odd, 0}; }
  static ScanFilter persistent(int k) { return {FilterKind::Persistent, k}; }
  // "mod4eq3", "odd", "persistent<k>".
  static ScanFilter parse(std::string_view text);
  std::string to_string() const;
};

// Running maxima carried into a scan that does not start at 3.
struct ScanSeed {
  int ft_max = 0;
  int sft_max = 0;
  std::vector<int> seen_ft;  // ascending
};

inline constexpr std::uint64_t kDefaultChunkSize = std::uint64_t{1} << 20;

struct RecordScanConfig {
  std::uint64_t lo = 3;
  std::uint64_t hi = 3;
  ScanFilter filter;
  std::vector<RecordKind> kinds{RecordKind::FtRecord};
  FallingBudget budget;
  std::uint64_t chunk_size = kDefaultChunkSize;
  int workers = 1;
  ScanSeed seed;

  // Stable text form of everything that determines the output. The worker
  // count is deliberately absent.
  std::string canonical() const;
  std::string hash() const;
};

// Thrown when a single n exhausts its falling-time budget, or on checkpoint
// problems.
class ScanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExhaustedError : public ScanError {
 public:
  using ScanError::ScanError;
};

struct ScanOptions {
  std::optional<std::filesystem::path> checkpoint;
  std::string scan_id = "records";
  // Invoked after each chunk is merged and checkpointed.
  std::function<void(std::uint64_t chunks_done)> after_chunk;
};

// Records, in increasing n (ties ordered by kind), for n in [lo, hi]
// passing the filter.
std::vector<RecordEntry> scan_records(const RecordScanConfig& config, const ScanOptions& options = {});

std::vector<RecordEntry> scan_ft_records(std::uint64_t lo, std::uint64_t hi, ScanFilter filter = {});
std::vector<RecordEntry> scan_new_ft(std::uint64_t lo, std::uint64_t hi, ScanFilter filter = {});
std::vector<RecordEntry> scan_sft_records(std::uint64_t lo, std::uint64_t hi, ScanFilter filter = {});

// Calls fn(n) for each n in [a, b] passing the filter, ascending.
void for_each_in_filter(const ScanFilter& filter, std::uint64_t a, std::uint64_t b,
                        const std::function<void(std::uint64_t)>& fn);

// One entry per line: kind, n, bit length, value; tab-separated.
void write_records_tsv(std::ostream& out, const std::vector<RecordEntry>& records);
void write_records_jsonl(std::ostream& out, const std::vector<RecordEntry>& records);

}  // namespace jumpfall
