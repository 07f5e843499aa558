#pragma once

#include <cstdint>

namespace gtsat {

// xoshiro256++ seeded through splitmix64. Hand-rolled so that results are
// bit-identical across compilers and platforms; the standard <random>
// distributions leave their output unspecified.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) {
    uint64_t x = seed;
    for (auto& s : state_) s = splitmix(x);
  }

  // Independent stream for sample `index` under `master_seed`. Streams are
  // decorrelated by mixing the index through splitmix before seeding.
  static Rng stream(uint64_t master_seed, uint64_t index) {
    uint64_t x = master_seed + 0x9e3779b97f4a7c15ull * (index + 1);
    return Rng(splitmix(x));
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

  // [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // (0, 1) strictly; safe to pass through log/logit.
  double next_open01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Uniform in [0, n). Multiply-shift; bias is < 2^-32 and irrelevant for the
  // small bounds used here (tie-breaks, index picks).
  uint32_t below(uint32_t n) {
    return static_cast<uint32_t>((static_cast<uint64_t>(next_u64() >> 32) * n) >> 32);
  }

  bool next_bool() { return (next_u64() >> 63) != 0; }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  static uint64_t splitmix(uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  uint64_t state_[4];
};

}  // namespace gtsat
