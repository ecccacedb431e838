#pragma once

#include <cstdint>
#include <random>

namespace capregion {

// Every stochastic quantity is keyed by (seed, stream ids...) so that slots,
// rows, or links can be drawn in any order or in parallel with identical
// results.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                    std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ (b + 0x632be59bd9b4e019ULL));
  h = splitmix64(h ^ (c + 0x85157af5ULL));
  return h;
}

// Stream tags so distinct uses of one user seed never share a generator.
enum class Stream : std::uint64_t {
  Placement = 1,
  Channel = 2,
  QuantizedPhase = 3,
  Noise = 4,
  Symbols = 5,
  Pairing = 6,
};

inline std::mt19937_64 make_rng(std::uint64_t seed, Stream stream,
                                std::uint64_t a = 0, std::uint64_t b = 0) {
  return std::mt19937_64(
      derive_seed(seed, static_cast<std::uint64_t>(stream), a, b));
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace capregion
