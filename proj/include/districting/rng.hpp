#pragma once

#include <cstdint>
#include <random>

namespace districting {

// splitmix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Seed for the index-th stream of a run. Streams for distinct indices
// are decorrelated even when base seeds are small consecutive values.
inline std::uint64_t derive_stream_seed(std::uint64_t base, std::uint64_t index) {
  return mix64(mix64(base) ^ mix64(index + 1));
}

// Uniform double in [0,1) from the top 53 bits of one draw. Avoids
// std::uniform_real_distribution so sequences are identical across
// standard library implementations.
inline double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace districting
