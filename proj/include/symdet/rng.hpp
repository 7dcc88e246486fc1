#pragma once

#include <cstdint>

#include "symdet/rational.hpp"

namespace symdet {

// Deterministic, platform-independent generator. Every random choice in the
// project flows from an explicit seed through this; no wall-clock entropy.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return next() % n; }

    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Numerators in [-9,9], denominators in [1,9]; small heights keep the
    // exact arithmetic fast.
    Rational small_rational() { return Rational(range(-9, 9), range(1, 9)); }

    Rational small_rational_nonzero() {
        for (;;) {
            Rational r = small_rational();
            if (!r.is_zero()) return r;
        }
    }
};

}  // namespace symdet
