// ============================================================================
// rng.hpp — pinned reproducible random number generator
// ============================================================================
//
// Every random draw in this project goes through SplitMix64 (Steele, Lea &
// Flood, "Fast splittable pseudorandom number generators", OOPSLA 2014; the
// same update/output function as java.util.SplittableRandom and the seeding
// stage of xoshiro).  The algorithm is pinned here so that datasets, splits
// and models are bit-reproducible across platforms and implementations.
//
//   state' = state + 0x9E3779B97F4A7C15
//   z = state'; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
//   z = (z ^ z>>27) * 0x94D049BB133111EB
//   out = z ^ z>>31
//
// Derived draws are defined on top of next():
//   next_double()   = (next() >> 11) * 2^-53          in [0, 1)
//   next_below(n)   = next() % n                      n >= 1
//   next_range(a,b) = a + next_below(b - a + 1)
//   fork(tag)       = SplitMix64 seeded with mix(seed ^ GOLDEN * (tag + 1))
//
// fork() gives independent, order-insensitive child streams (formula vs
// Kripke generation from the same GenSpec seed, per-tree forest seeds, ...).
// ============================================================================

#pragma once

#include <cstdint>

namespace ltloracle {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 mantissa bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n).  n must be >= 1.
    std::uint64_t next_below(std::uint64_t n) { return next() % n; }

    /// Uniform integer in [lo, hi], inclusive.
    std::uint64_t next_range(std::uint64_t lo, std::uint64_t hi) {
        return lo + next_below(hi - lo + 1);
    }

    bool next_bool(double p) { return next_double() < p; }

    /// Child stream that depends only on (seed at construction, tag).
    SplitMix64 fork(std::uint64_t tag) const {
        std::uint64_t z = seed_mix(state_ ^ (0x9E3779B97F4A7C15ULL * (tag + 1)));
        return SplitMix64(z);
    }

private:
    static std::uint64_t seed_mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace ltloracle
