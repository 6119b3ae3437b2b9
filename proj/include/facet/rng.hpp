#pragma once

#include <cmath>
#include <cstdint>

namespace facet {

// Portable deterministic PRNG: xoshiro256** seeded through SplitMix64.
// The exact constants are fixed here so that any implementation in any
// language reproduces the same stream from the same 64-bit seed.
//
//   SplitMix64: z = s += 0x9E3779B97F4A7C15
//               z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//               z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//               return z ^ (z >> 31)
//
//   xoshiro256**: rotl(s1 * 5, 7) * 9 with the standard 17/45 state update.
//
// Gaussian draws use Box-Muller on two uniforms (no rejection), so the
// stream position after any call sequence is platform-independent.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) word = splitmix64(s);
        has_cached_gauss_ = false;
        cached_gauss_ = 0.0;
    }

    std::uint64_t next_u64() {
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

    // Uniform double in [0,1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0,n). Multiply-shift bounding; the modulo-free
    // mapping keeps the draw sequence identical across platforms.
    std::uint64_t uniform_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Standard normal via Box-Muller; caches the second value.
    double next_gaussian() {
        if (has_cached_gauss_) {
            has_cached_gauss_ = false;
            return cached_gauss_;
        }
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        cached_gauss_ = r * std::sin(theta);
        has_cached_gauss_ = true;
        return r * std::cos(theta);
    }

    // Independent child stream; `tag` separates streams forked from the
    // same parent state.
    Rng fork(std::uint64_t tag) {
        std::uint64_t s = next_u64() ^ (tag * 0x9E3779B97F4A7C15ULL);
        return Rng(splitmix64(s));
    }

    static std::uint64_t splitmix64(std::uint64_t& s) {
        std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
    bool has_cached_gauss_;
    double cached_gauss_;
};

}  // namespace facet
