#pragma once

#include <cstdint>
#include <random>

namespace srl {

using Seed = std::uint64_t;
using Rng = std::mt19937_64;

// splitmix64 finalizer
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Child seed for stream `index` of `base`. Streams are independent of the
/// order in which they are consumed.
constexpr Seed derive_seed(Seed base, std::uint64_t index) noexcept {
  return mix_seed(mix_seed(base) + index);
}

inline Rng make_rng(Seed seed) { return Rng(mix_seed(seed)); }

/// Uniform index in [0, n). n must be positive.
template <class Engine>
std::size_t uniform_index(Engine& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace srl
