#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace jumpfall::cli {

// Everything a command was run with. The canonical form covers the inputs
// that determine output bytes; worker count and file paths are left out so
// that the hash is the same for any schedule and any output location.
struct RunConfig {
  std::string command;
  std::string range;  // "LO..HI" as given, empty if unused
  int max_jumps = 0;
  std::optional<std::uint64_t> max_bits;
  std::uint64_t step_budget = 0;
  int workers = 1;
  std::string output_path;
  std::string checkpoint_path;
  std::optional<std::uint64_t> seed;
  std::map<std::string, std::string> params;  // command-specific

  // key=value lines, sorted by key, LF-terminated.
  std::string canonical() const;
  std::string hash() const;
};

}  // namespace jumpfall::cli
