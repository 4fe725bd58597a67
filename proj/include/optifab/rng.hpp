#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace optifab {

// Deterministic PRNG (xoshiro256++) with splitmix64 seeding. The standard
// library engines/distributions are implementation-defined, so everything
// that must reproduce bit-identically across builds goes through this.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
  }

  // Independent stream keyed by (seed, tag, a, b). Proposal decisions are
  // drawn from substreams of the experiment seed so that resume does not
  // depend on replaying the RNG history.
  static Rng substream(uint64_t seed, std::string_view tag, uint64_t a = 0, uint64_t b = 0) {
    uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](uint64_t v) {
      for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 0x100000001b3ULL;
      }
    };
    mix(seed);
    for (char c : tag) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    mix(a);
    mix(b);
    return Rng(h);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n), n >= 1. Modulo bias is irrelevant at our scales
  // but rejection keeps it exact.
  uint64_t uniform_index(uint64_t n) {
    const uint64_t limit = n * (UINT64_MAX / n);
    uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return v % n;
  }

  // Standard normal via Box-Muller (stateless; one value per call).
  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  static uint64_t splitmix64(uint64_t& x) {
    uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t state_[4];
};

// Scrambled low-discrepancy sequence: Halton bases with a seed-dependent
// Cranley-Patterson rotation per dimension. Good enough space-filling for
// initialization batches up to a few hundred dimensions.
class HaltonSequence {
 public:
  HaltonSequence(size_t dimension, uint64_t seed);

  // Point at index i (i >= 0), coordinates in [0, 1).
  std::vector<double> point(uint64_t index) const;

 private:
  std::vector<uint32_t> bases_;
  std::vector<double> shifts_;
};

}  // namespace optifab
