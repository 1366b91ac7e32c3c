#pragma once

#include <string>
#include <string_view>

namespace jumpfall {

// Hex SHA-256 of text, truncated to 16 bytes. Stable across platforms; used
// as the config hash of outputs and checkpoints.
std::string config_digest(std::string_view text);

inline constexpr std::string_view kVersion = "1.0.0";

}  // namespace jumpfall
