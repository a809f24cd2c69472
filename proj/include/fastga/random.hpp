#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fastga {

/// Per-run random stream. Every run owns exactly one of these.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// 64-bit FNV-1a, used to turn algorithm labels into stream tags.
constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seed of run `run` at problem size `n` for the algorithm labelled `tag`.
///
/// Each component is folded in through a full SplitMix64 round, so changing
/// one algorithm's label never moves any other algorithm's streams.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view tag,
                                    std::uint64_t n, std::uint64_t run) noexcept {
  std::uint64_t h = splitmix64(base_seed);
  h = splitmix64(h ^ fnv1a64(tag));
  h = splitmix64(h ^ n);
  h = splitmix64(h ^ run);
  return h;
}

/// Uniform integer in [0, bound), bound >= 1 (Lemire's multiply-shift
/// method with rejection; usually no division).
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  __extension__ using Wide = unsigned __int128;
  Wide m = static_cast<Wide>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<Wide>(rng()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

/// Uniform real in [0, 1).
inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace fastga
