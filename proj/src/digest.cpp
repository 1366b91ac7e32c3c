#include "jumpfall/digest.hpp"

#include <openssl/sha.h>

#include <array>
#include <cstdio>

namespace jumpfall {

std::string config_digest(std::string_view text) {
  std::array<unsigned char, SHA256_DIGEST_LENGTH> md{};
  SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), md.data());
  std::string hex;
  hex.reserve(32);
  for (std::size_t i = 0; i < 16; ++i) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace jumpfall
