#pragma once

#include <cstdint>

#include <gmpxx.h>

namespace pathrep {

/// Seedable 64-bit generator (xoshiro256**). Output is platform-independent,
/// which std::uniform_int_distribution would not give us.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        // splitmix64 expansion of the seed into the state.
        std::uint64_t x = seed;
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    std::uint64_t next() {
        auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
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

    /// Uniform draw from [0, bound); bound > 0. Rejection on the top interval.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        for (;;) {
            std::uint64_t v = next();
            if (v < limit) return v % bound;
        }
    }

    /// Uniform big-integer draw from [0, bound); bound > 0.
    mpz_class below(const mpz_class& bound) {
        const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
        const std::size_t words = (bits + 63) / 64;
        for (;;) {
            mpz_class v = 0;
            for (std::size_t i = 0; i < words; ++i) {
                mpz_class word = static_cast<unsigned long>(next() >> 32);
                word <<= 32;
                word |= static_cast<unsigned long>(next() & 0xffffffffULL);
                v <<= 64;
                v |= word;
            }
            // Keep only `bits` bits so the acceptance probability is >= 1/2.
            mpz_class mask = 1;
            mask <<= bits;
            mask -= 1;
            v &= mask;
            if (v < bound) return v;
        }
    }

private:
    std::uint64_t state_[4];
};

} // namespace pathrep
