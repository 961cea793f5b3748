#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace ulamkac {

/// SplitMix64 (Steele/Lea/Flood).  Used only to expand seeds into generator
/// state and to derive per-stream seeds; one fixed, documented algorithm so
/// runs are reproducible across builds.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// xoshiro256** (Blackman/Vigna reference constants).
class Xoshiro256StarStar {
public:
    /// State = first four SplitMix64(seed) outputs.
    explicit Xoshiro256StarStar(std::uint64_t seed) : Xoshiro256StarStar(seed, 0) {}

    /// Stream k uses SplitMix64(seed) outputs 4k..4k+3 as its state, so a
    /// (seed, stream) pair fully determines the sample sequence no matter
    /// how streams are scheduled.
    Xoshiro256StarStar(std::uint64_t seed, std::uint64_t stream) {
        SplitMix64 sm(seed);
        for (std::uint64_t skip = 0; skip < 4 * stream; ++skip) sm.next();
        for (auto& word : s_) word = sm.next();
        if (s_[0] == 0 && s_[1] == 0 && s_[2] == 0 && s_[3] == 0) {
            s_[0] = 0x9E3779B97F4A7C15ULL;  // all-zero state is invalid
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform draw from {0, ..., bound-1} by masked rejection (no modulo
    /// bias).
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
        if (bound == 1) return 0;
        std::uint64_t mask = ~std::uint64_t{0} >> __builtin_clzll(bound - 1);
        std::uint64_t draw;
        do {
            draw = next() & mask;
        } while (draw >= bound);
        return draw;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> s_;
};

}  // namespace ulamkac
