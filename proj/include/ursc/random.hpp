#pragma once

#include <cstdint>
#include <random>

namespace ursc {

/// Stateless 64-bit mixer (splitmix64 finalizer).  Used to derive independent
/// per-trial streams from one seed so that statistics are identical for any
/// worker count or trial partition.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Uniform double in [0, 1) from the engine's top 53 bits.  Implemented by
/// hand (not std::uniform_real_distribution) so the stream is identical on
/// every standard library implementation.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace ursc
