#pragma once

#include <cstdint>
#include <limits>

namespace urnlab {

/// SplitMix64 finalizer. Bijective mixing of a 64-bit word.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// xoshiro256** engine (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
///
/// The state is expanded from a single 64-bit key with SplitMix64, so any
/// key (including 0) gives a valid, non-zero state.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t key) noexcept {
        std::uint64_t x = key;
        for (auto& word : state_) {
            x += 0x9E3779B97F4A7C15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
            word = z ^ (z >> 31);
        }
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

/// Random stream used for every draw in the library.
using RandomStream = Xoshiro256;

/// Counter-based stream derivation: stream `index` under `seed` is keyed by
/// mix64(mix64(seed) ^ index). Streams are independent of evaluation order.
inline RandomStream derive_stream(std::uint64_t seed, std::uint64_t index) noexcept {
    return RandomStream(mix64(mix64(seed) ^ index));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double unit_uniform(RandomStream& rng) noexcept {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Unbiased integer in [0, bound) by Lemire's multiply-shift rejection. bound > 0.
inline std::uint64_t uniform_below(RandomStream& rng, std::uint64_t bound) noexcept {
    unsigned __int128 product = static_cast<unsigned __int128>(rng()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            product = static_cast<unsigned __int128>(rng()) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

}  // namespace urnlab
