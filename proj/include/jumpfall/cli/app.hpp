#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jumpfall::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitMismatch = 1,     // verification found a difference
  kExitUsage = 2,        // malformed flags or arguments
  kExitExhausted = 3,    // a falling-time budget ran out
  kExitFailure = 4,      // I/O, checkpoint or other runtime error
  kExitAborted = 75,     // --abort-after-chunks fired
};

// Every flag can also be set through the environment: JUMPFALL_ followed by
// the long flag name upper-cased with '-' mapped to '_'
// (e.g. JUMPFALL_MAX_JUMPS). Flags given on the command line win.
inline constexpr const char* kEnvPrefix = "JUMPFALL_";

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jumpfall::cli
