#pragma once

#include <cstdint>
#include <string>

namespace ursc {

/// FNV-1a 64-bit hash; used to pin regression fixtures (e.g. constructed code
/// files) as a single comparable value.
inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace ursc
