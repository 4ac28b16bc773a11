#pragma once

#include <cstdint>
#include <random>

namespace ballkit {

using Engine = std::mt19937_64;

/// Stream tags keep substreams of unrelated consumers disjoint.
enum class Stream : std::uint32_t {
  Meb = 1,
  HitOrMiss = 2,
  Directions = 3,
  Validation = 4,
  Trials = 5,
  Packing = 6,
  Cluster = 7,
  Configuration = 8,
  Membership = 9,
};

/// 64-bit key derived from (seed, stream, index). Distinct indices give
/// statistically independent engines, so chunk c of a run always sees the
/// same numbers no matter which thread evaluates it.
inline std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

inline Engine substream(std::uint64_t seed, Stream stream, std::uint64_t index) {
  return Engine(derive_seed(seed, stream, index));
}

}  // namespace ballkit
