#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

// Counter-based random number generation. Every draw is a pure function of
// (key, counter), so any consumer that assigns counters deterministically is
// reproducible bit-exactly and can be partitioned across workers: give each
// worker a disjoint counter range and the merged result cannot depend on the
// worker count. The output function is the SplitMix64 finalizer applied to
// key + (counter + 1) * golden-gamma.
//
// Stream discipline: independent purposes must use independent keys, obtained
// via substream(). Within one stream, callers own the counter layout and must
// document it (e.g. sample_events consumes exactly one counter per trial,
// counter = trial index).

namespace sqi {

class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed) : key_(mix(seed ^ kKeyTweak)) {}

    /// Independent stream for a distinct purpose; stable under key reuse.
    CounterRng substream(std::uint64_t stream) const {
        CounterRng r(0);
        r.key_ = mix(key_ + (stream + 1) * kGamma);
        return r;
    }

    /// 64 pseudo-random bits for this counter.
    std::uint64_t bits(std::uint64_t counter) const {
        return mix(key_ + (counter + 1) * kGamma);
    }

    /// Uniform double in [0, 1), 53 significant bits.
    double uniform01(std::uint64_t counter) const {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

    /// Two standard normals via Box-Muller; consumes counters 2c and 2c+1.
    std::pair<double, double> gaussians(std::uint64_t counter) const {
        // map u1 into (0, 1] so the log is finite
        const double u1 = 1.0 - uniform01(2 * counter);
        const double u2 = uniform01(2 * counter + 1);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(angle), r * std::sin(angle)};
    }

    std::uint64_t key() const { return key_; }

  private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
    static constexpr std::uint64_t kKeyTweak = 0x5851F42D4C957F2Dull;

    // SplitMix64 finalizer (Steele, Lea, Flood 2014).
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
};

} // namespace sqi
