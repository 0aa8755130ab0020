#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace rarbench {

// SHA-256 of `data`, lowercase hex (64 chars).
std::string sha256_hex(std::string_view data);

// Stable 64-bit value derived from a string (first 8 digest bytes, big-endian).
uint64_t sha256_prefix64(std::string_view data);

}  // namespace rarbench
