#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "atse/errors.hpp"

namespace atse {

// Seed mixing (splitmix64). Used to derive independent stream seeds from a
// master seed plus structural indices (expert index, time step) so results
// do not depend on evaluation order.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a) {
    return mix_seed(seed ^ mix_seed(a));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return derive_seed(derive_seed(seed, a), b);
}

// Deterministic random stream: mt19937_64 bit source (fully specified by the
// C++ standard) with hand-rolled distributions, since std:: distribution
// output is implementation-defined. Streams are therefore reproducible across
// standard libraries and portable to other-language reimplementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Unbiased integer in [0, bound) by masked rejection.
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound == 0) throw ParameterError("uniform_below: bound must be positive");
        if (bound == 1) return 0;
        std::uint64_t mask = ~0ULL >> __builtin_clzll(bound - 1);
        std::uint64_t v;
        do {
            v = gen_() & mask;
        } while (v >= bound);
        return v;
    }

    // Integer in [lo, hi] inclusive.
    long long uniform_int(long long lo, long long hi) {
        if (lo > hi) throw ParameterError("uniform_int: empty interval");
        return lo + static_cast<long long>(
                        uniform_below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // Real in [0, 1) with 53 random mantissa bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform_real(double lo, double hi) {
        if (!(lo <= hi)) throw ParameterError("uniform_real: empty interval");
        return lo + (hi - lo) * uniform01();
    }

    // Standard normal via Box-Muller; both values of each pair are consumed
    // in order so the stream is a pure function of the seed.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace atse
