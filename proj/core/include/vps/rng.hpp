#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace vps {

// Deterministic, seedable random generator used for every stochastic choice
// in the library (sampling, weight init, shuffling).
//
// Algorithm: xoshiro256++ (Blackman & Vigna), state seeded from the 64-bit
// seed via the splitmix64 sequence. Doubles are produced as
// (next() >> 11) * 2^-53, giving uniform values in [0, 1). Integer draws
// below a bound use multiply-shift with rejection, so they are exact and
// reproducible. Any implementation of these published algorithms yields the
// same stream for the same seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        // splitmix64 expansion of the seed into the four state words
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
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

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi). Degenerate ranges (lo == hi) return lo.
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // Unbiased integer in [0, n). n must be nonzero.
    std::uint64_t below(std::uint64_t n) {
        while (true) {
            const std::uint64_t x = next_u64();
            const __uint128_t m = static_cast<__uint128_t>(x) * n;
            const auto low = static_cast<std::uint64_t>(m);
            if (low < n) {
                const std::uint64_t threshold = (0 - n) % n;
                if (low < threshold) continue;
            }
            return static_cast<std::uint64_t>(m >> 64);
        }
    }

    // Standard normal via the basic Box-Muller transform; consumes exactly
    // two uniforms per call.
    double normal() {
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Fisher-Yates shuffle driven by below().
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

} // namespace vps
