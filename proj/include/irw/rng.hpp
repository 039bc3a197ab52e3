#pragma once

#include <cstdint>
#include <random>

namespace irw {

// splitmix64 finalizer; decorrelates nearby seeds.
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for the `index`-th substream of `base` (replications, folds, ...).
inline std::uint64_t derived_seed(std::uint64_t base, std::uint64_t index) {
  return mix_seed(base ^ mix_seed(index));
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(mix_seed(seed)); }

}  // namespace irw
