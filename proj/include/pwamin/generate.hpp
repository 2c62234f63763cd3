#ifndef PWAMIN_GENERATE_HPP
#define PWAMIN_GENERATE_HPP

#include <cstdint>

#include "pwamin/pwa.hpp"

namespace pwamin {

/// PCG32 (XSH RR 64/32) with a fixed stream constant. Pure integer
/// arithmetic, so the same seed produces the same instance on every
/// platform; seeds quoted in experiments stay reproducible.
class Pcg32 {
public:
    explicit Pcg32(std::uint64_t seed) : state_(0) {
        next();
        state_ += seed;
        next();
    }

    std::uint32_t next() {
        std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + kIncrement;
        std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    /// Uniform in [0, bound) without modulo bias.
    std::uint32_t bounded(std::uint32_t bound) {
        std::uint32_t threshold = (-bound) % bound;
        for (;;) {
            std::uint32_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform integer in [lo, hi].
    long range(long lo, long hi) {
        return lo + static_cast<long>(bounded(static_cast<std::uint32_t>(hi - lo + 1)));
    }

private:
    static constexpr std::uint64_t kIncrement = 1442695040888963407ULL;
    std::uint64_t state_;
};

enum class GenProfile {
    RintConsistent,    // rows built around a strictly positive certificate
    SignConsistentOnly, // row sign set consistent, nothing else enforced
    Unrestricted
};

/// Deterministic random instance: integer entries in [-3, 3] shaped by
/// the profile (the RintConsistent closing row may be rational).
PwaFunction<Rational> generate_random(std::size_t n, std::size_t m, std::uint64_t seed,
                                      GenProfile profile);

} // namespace pwamin

#endif
