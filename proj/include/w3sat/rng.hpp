#pragma once

// All randomness in the project comes from std::mt19937_64, whose output
// sequence is fixed by the C++ standard. Bounded draws use rejection
// sampling below instead of std::uniform_int_distribution, whose algorithm
// is implementation-defined, so a seed produces the same bytes everywhere.

#include <cstdint>
#include <random>

namespace w3sat {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer, used to derive independent child seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t child_seed(std::uint64_t parent, std::uint64_t index) {
  return mix_seed(mix_seed(parent) ^ mix_seed(index + 0x632be59bd9b4e019ull));
}

/// Uniform integer in [0, bound). bound must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return x % bound;
}

inline bool coin(Rng& rng) { return (rng() >> 63) != 0; }

}  // namespace w3sat
