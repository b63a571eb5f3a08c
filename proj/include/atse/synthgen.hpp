#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "atse/timeseries.hpp"

namespace atse {

// Seeded synthetic monthly dataset: piecewise level + sinusoidal seasonality
// (period 12) + Gaussian noise for the target, and query terms that track
// the target with a configurable lead and noise. Streams are produced by the
// library's fixed RNG (mt19937_64 bit source, Box-Muller normals), so a
// seed fully determines the output.
struct Scenario {
    std::size_t length = 80;
    double base_level = 50.0;
    double seasonal_amplitude = 0.0;
    std::vector<std::pair<std::size_t, double>> change_points;  // (step, new level)
    double noise_std = 0.0;
    std::size_t n_terms = 3;
    std::size_t term_lag = 0;  // months the query signal leads the target
    double term_noise_std = 0.0;
    std::uint64_t seed = 0;
    MonthIndex start{2011, 1};

    void validate() const;
};

Dataset generate(const Scenario& sc);

// The five canonical scenarios used by the acceptance fixtures, in order:
// stationary-flat, stationary-seasonal, media-scare, supply-shortage,
// schedule-drift.
std::vector<std::pair<std::string, Scenario>> canonical_scenarios();

}  // namespace atse
