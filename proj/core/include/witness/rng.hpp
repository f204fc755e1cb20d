#pragma once

#include <array>
#include <cstdint>

namespace witness {

// Fixed, fully specified pseudorandom generator so that seeded results are
// reproducible bit-for-bit across platforms and releases: xoshiro256++ with
// SplitMix64 state expansion. Run-indexed experiments draw from substreams
// derived as substream_seed(seed, run); the scheme below is part of the
// file-format contract and must not change silently.

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// Substream k of a base seed: decorrelated by scrambling the pair through
/// SplitMix64 before state expansion.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 mix(seed);
    const std::uint64_t base = mix.next();
    SplitMix64 stream_mix(base + stream * 0x9E3779B97F4A7C15ULL);
    return stream_mix.next();
}

class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) {
        SplitMix64 mix(seed);
        for (auto& word : state_) word = mix.next();
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// 53-bit uniform draw in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace witness
