#pragma once

// Seeding and substream derivation for the Monte Carlo estimators.
//
// Every estimator consumes randomness through substreams derived from
// (user seed, stream index) with SplitMix64 mixing, so results depend only
// on the seed and the sample count, never on execution order or sharding.

#include <cstdint>
#include <random>

namespace sphere {

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives a well-spread substream seed from a base seed and a stream index.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
  std::uint64_t a = splitmix64_next(s);
  std::uint64_t b = splitmix64_next(s);
  return a ^ (b << 1);
}

inline Engine make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
  return Engine(mix_seed(seed, stream));
}

}  // namespace sphere
