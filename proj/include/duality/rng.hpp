#pragma once

#include <cstdint>

// Seeded, portable randomness. SplitMix64 (Steele/Lea/Sebesta) is the one
// algorithm used throughout: 64-bit state, a fixed additive constant and a
// finalizer, so identical seeds give identical streams on every platform.

namespace duality {

inline constexpr const char* splitmix64_name = "splitmix64";

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 significant bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

namespace detail {
inline std::uint64_t scramble64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
} // namespace detail

// Independent stream for (seed, index). The scrambled start state places
// substreams at pseudo-random positions of the SplitMix64 sequence, so
// per-index draws are order-independent.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(detail::scramble64(seed + 0x9E3779B97F4A7C15ULL * (index + 1)));
}

} // namespace duality
