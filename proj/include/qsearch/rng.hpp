#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace qsearch {

// Counter-based splittable generator (splitmix64). Every consumer derives its
// own stream from (master seed, stream index), so parallel sweeps reproduce
// bit-identically regardless of scheduling. All sampling helpers are
// implemented here instead of <random> distributions, whose output is not
// pinned down by the standard.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Independent stream keyed by (master, stream).
    static SplitMix64 derive(std::uint64_t master, std::uint64_t stream) {
        return SplitMix64(mix(master ^ mix(stream + 0x9E3779B97F4A7C15ULL)));
    }

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Unbiased integer in [0, bound); Lemire's multiply-shift with rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        using u128 = unsigned __int128;
        u128 product = u128(next()) * u128(bound);
        auto low = static_cast<std::uint64_t>(product);
        if (low < bound) {
            const std::uint64_t threshold = -bound % bound;
            while (low < threshold) {
                product = u128(next()) * u128(bound);
                low = static_cast<std::uint64_t>(product);
            }
        }
        return static_cast<std::uint64_t>(product >> 64);
    }

    // Standard normal via Box-Muller; second value cached.
    double next_gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = next_double();
        while (u1 <= 0.0)
            u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(theta);
        have_cached_ = true;
        return r * std::cos(theta);
    }

    // UniformRandomBitGenerator interface (for std::shuffle and friends).
    std::uint64_t operator()() { return next(); }
    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return std::numeric_limits<std::uint64_t>::max(); }

private:
    std::uint64_t state_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

} // namespace qsearch
