#pragma once

#include <cstdint>
#include <random>

namespace sumgraph {

/// Seeded generator with portable output (no std distributions).
///
/// Substreams: draw index i of a sampler uses substream(seed, i / kBlock),
/// so any chunking of the draw range over workers yields the same values.
class Rng {
 public:
  static constexpr std::uint64_t kBlock = 4096;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng substream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, bound), unbiased.
  std::uint64_t below(std::uint64_t bound);
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace sumgraph
