#pragma once

#include <cstdint>

namespace pcd {

// SplitMix64: tiny, fast, and good enough for Monte Carlo tallies.
// Streams are keyed so that replicate k of a run always sees the same
// deterministic sequence regardless of thread count or schedule.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Stream for one replicate: decorrelates seed and index up front.
    static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
        return SplitMix64(mix(seed ^ mix(index)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

} // namespace pcd
