#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace kumanet {

// Deterministic PRNG: xoshiro256** with its 256-bit state expanded from a
// 64-bit seed by splitmix64. The algorithm is fixed so that identical seeds
// give identical streams on every platform, and so that reimplementations in
// other languages can match the golden fixture files under tests/golden/.
//
// Child streams: derive_seed(seed, stream_id) = mix64(mix64(seed) ^ mix64(~stream_id)),
// where mix64 is the splitmix64 output scrambler. Distinct stream ids give
// streams that are disjoint in practice (property-tested).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_id);
  static Rng derive(std::uint64_t seed, std::uint64_t stream_id) {
    return Rng(derive_seed(seed, stream_id));
  }

  std::uint64_t next_u64();

  // Uniform draw in [0,1) with 53-bit precision.
  double next_uniform();

  // Unbiased integer in [0, bound) via rejection sampling; bound must be > 0.
  std::uint64_t next_below(std::uint64_t bound);

  // Box-Muller normal draw; consumes exactly two uniforms for variance > 0
  // and none for variance == 0 (returns mean exactly).
  // Negative variance is a domain error.
  double next_normal(double mean, double variance);

  // Fisher-Yates permutation of 0..n-1.
  std::vector<std::size_t> shuffle_indices(std::size_t n);

 private:
  std::array<std::uint64_t, 4> state_;
};

}  // namespace kumanet
