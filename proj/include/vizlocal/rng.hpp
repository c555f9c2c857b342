#pragma once

#include <cstdint>

namespace vizlocal {

// Deterministic splitmix64 stream. All randomness in a run flows from one
// seed; independent phases derive named substreams so that processing order
// cannot change which draws a consumer sees.
class RngStream {
public:
    RngStream() : state_(0) {}
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform integer in [0, bound), bound >= 1. Rejection sampling keeps the
    // draw unbiased and independent of any standard-library distribution.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool next_bernoulli(double p) { return next_unit() < p; }

    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    RngStream derive(std::uint64_t tag) const { return RngStream(mix(state_, tag)); }
    RngStream derive(std::uint64_t tag, std::uint64_t a) const {
        return RngStream(mix(mix(state_, tag), a));
    }
    RngStream derive(std::uint64_t tag, std::uint64_t a, std::uint64_t b) const {
        return RngStream(mix(mix(mix(state_, tag), a), b));
    }

private:
    std::uint64_t state_;
};

// Substream tags.
inline constexpr std::uint64_t kRngGraphGen = 0x67656e5f67726170ULL;
inline constexpr std::uint64_t kRngBlocking = 0x626c6f636b696e67ULL;
inline constexpr std::uint64_t kRngShuffle = 0x73687566666c6521ULL;

}  // namespace vizlocal
