// Reproducible random streams.
//
// Stream (seed, stream_id) is std::mt19937_64 seeded with the single word
//   splitmix64(seed ^ splitmix64(stream_id))
// where splitmix64 is Vigna's finalizer:
//   z += 0x9e3779b97f4a7c15
//   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//   return z ^ (z >> 31)
// Uniform doubles on [0, 1) take the top 53 bits of one output:
//   (x >> 11) * 2^-53
// The standard fixes mt19937_64's output sequence exactly, and nothing here
// goes through std::uniform_real_distribution, whose algorithm is
// implementation-defined.
#pragma once

#include <cstdint>
#include <random>

namespace qdc {

std::uint64_t splitmix64(std::uint64_t z);

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64() { return engine_(); }
  /// [0, 1)
  double uniform01();
  /// [lo, hi)
  double uniform(double lo, double hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace qdc
