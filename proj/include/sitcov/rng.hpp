#pragma once

#include <cstdint>

namespace sitcov {

// SplitMix64: tiny, fast, passes BigCrush; one 64-bit word of state.
// Reference sequence is pinned in the test suite so serialized logs stay
// reproducible across platforms and refactors.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n) via Lemire's multiply-shift; bias < 2^-64, fine here
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  // uniform double in [0, 1) with 53 random bits
  double unit() { return (next() >> 11) * 0x1.0p-53; }
};

// Decorrelated per-episode seed stream: episode i of a campaign seeded with s
// uses derive_seed(s, i).  One extra SplitMix64 scramble keeps neighboring
// campaign seeds from producing overlapping episode streams.
inline std::uint64_t derive_seed(std::uint64_t campaign_seed,
                                 std::uint64_t index) {
  SplitMix64 g(campaign_seed + 0x9E3779B97F4A7C15ULL * (index + 1));
  return g.next();
}

}  // namespace sitcov
