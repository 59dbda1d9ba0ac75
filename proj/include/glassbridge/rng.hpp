#pragma once

#include <cstdint>
#include <random>

namespace glassbridge {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream identifiers. Streams with different kinds never share a seed for the
// same (master, index) pair.
enum class StreamKind : std::uint64_t {
  disorder = 1,
  thermal = 2,
  error_chain = 3,
  instance = 4,
  bootstrap = 5,
};

constexpr std::uint64_t derive_seed(std::uint64_t master, StreamKind kind,
                                    std::uint64_t index,
                                    std::uint64_t sub = 0) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ static_cast<std::uint64_t>(kind));
  h = splitmix64(h ^ index);
  return splitmix64(h ^ sub);
}

inline Rng make_rng(std::uint64_t master, StreamKind kind, std::uint64_t index,
                    std::uint64_t sub = 0) {
  return Rng(derive_seed(master, kind, index, sub));
}

// Uniform double in [0, 1) from the top 53 bits; avoids the
// implementation-defined behaviour of std::uniform_real_distribution so that
// streams are identical across standard libraries.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace glassbridge
