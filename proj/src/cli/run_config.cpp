#include "jumpfall/cli/run_config.hpp"

#include <sstream>

#include "jumpfall/digest.hpp"

namespace jumpfall::cli {

std::string RunConfig::canonical() const {
  std::map<std::string, std::string> fields = params;
  fields["command"] = command;
  if (!range.empty()) fields["range"] = range;
  fields["max-jumps"] = std::to_string(max_jumps);
  fields["max-bits"] = max_bits ? std::to_string(*max_bits) : "auto";
  fields["step-budget"] = std::to_string(step_budget);
  if (seed) fields["seed"] = std::to_string(*seed);
  std::ostringstream out;
  for (const auto& [k, v] : fields) out << k << '=' << v << '\n';
  return out.str();
}

std::string RunConfig::hash() const { return config_digest(canonical()); }

}  // namespace jumpfall::cli
