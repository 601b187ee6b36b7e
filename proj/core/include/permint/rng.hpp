#pragma once

#include <cstdint>

namespace permint {

// SplitMix64. Counter-based: output k of a stream is a pure function of
// (seed, stream, k), so sampling loops can be split across workers in any
// order and still produce identical results.
//
// Seed-derivation rule: stream s of seed x starts at
//   state0 = mix(x ^ mix(s + PHI64)),
// where mix is the SplitMix64 finalizer and PHI64 = 0x9E3779B97F4A7C15.
// Sample index s always uses stream s.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kPhi64 = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  SplitMix64(std::uint64_t seed, std::uint64_t stream)
      : state_(mix(seed ^ mix(stream + kPhi64))) {}

  std::uint64_t next() {
    state_ += kPhi64;
    return mix(state_);
  }

  // Uniform in [0,1), 53 mantissa bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool next_bernoulli(double p) { return next_unit() < p; }

  // Uniform in {0, ..., bound-1} (bound > 0); unbiased by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
  }

 private:
  std::uint64_t state_;
};

}  // namespace permint
