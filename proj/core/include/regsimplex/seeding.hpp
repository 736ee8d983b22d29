#pragma once

#include <cstdint>

namespace regsimplex {

// SplitMix64 finalizer. Per-item generators are seeded with derive_seed(seed, k) so that
// item k depends only on (seed, k), whatever order or thread evaluates it.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ (index * 0xD1B54A32D192ED03ULL + 1));
}

}  // namespace regsimplex
