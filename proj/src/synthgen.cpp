#include "atse/synthgen.hpp"

#include <algorithm>
#include <cmath>

#include "atse/rng.hpp"

namespace atse {

void Scenario::validate() const {
    if (length == 0) throw ParameterError("scenario: length must be >= 1");
    if (noise_std < 0.0 || term_noise_std < 0.0)
        throw ParameterError("scenario: noise std must be >= 0");
    if (seasonal_amplitude < 0.0)
        throw ParameterError("scenario: seasonal amplitude must be >= 0");
    if (base_level < 0.0) throw ParameterError("scenario: base level must be >= 0");
    std::size_t prev = 0;
    bool first = true;
    for (const auto& [step, level] : change_points) {
        if (step >= length) throw ParameterError("scenario: change point beyond series");
        if (!first && step <= prev)
            throw ParameterError("scenario: change point steps must strictly increase");
        if (level < 0.0) throw ParameterError("scenario: change point level must be >= 0");
        prev = step;
        first = false;
    }
}

Dataset generate(const Scenario& sc) {
    sc.validate();
    std::size_t ext_len = sc.length + sc.term_lag;

    // Target, extended term_lag months past the end so leading query signals
    // have something to read.
    Rng target_rng(derive_seed(sc.seed, 0));
    std::vector<double> ext(ext_len);
    for (std::size_t t = 0; t < ext_len; ++t) {
        double level = sc.base_level;
        for (const auto& [step, new_level] : sc.change_points)
            if (t >= step) level = new_level;
        double seasonal =
            sc.seasonal_amplitude * std::sin(2.0 * M_PI * static_cast<double>(t) / 12.0);
        double v = level + seasonal + target_rng.normal(0.0, sc.noise_std);
        ext[t] = std::max(v, 0.0);
    }
    std::vector<double> target(ext.begin(), ext.begin() + sc.length);

    std::vector<std::string> terms;
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < sc.n_terms; ++k) {
        Rng term_rng(derive_seed(sc.seed, 1 + k));
        std::vector<double> signal(sc.length);
        for (std::size_t t = 0; t < sc.length; ++t) signal[t] = ext[t + sc.term_lag];

        auto [lo_it, hi_it] = std::minmax_element(signal.begin(), signal.end());
        double lo = *lo_it;
        double hi = *hi_it;
        std::vector<double> row(sc.length);
        for (std::size_t t = 0; t < sc.length; ++t) {
            double scaled = hi > lo ? 100.0 * (signal[t] - lo) / (hi - lo) : 50.0;
            double v = scaled + term_rng.normal(0.0, sc.term_noise_std);
            row[t] = std::clamp(v, 0.0, 100.0);
        }
        terms.push_back("term_" + std::to_string(k));
        rows.push_back(std::move(row));
    }

    UptakeSeries uptake(sc.start, std::move(target));
    QueryPanel panel = sc.n_terms == 0 ? QueryPanel(sc.start, sc.length)
                                       : QueryPanel(sc.start, std::move(terms), std::move(rows));
    return Dataset(std::move(uptake), std::move(panel));
}

std::vector<std::pair<std::string, Scenario>> canonical_scenarios() {
    std::vector<std::pair<std::string, Scenario>> out;

    Scenario flat;
    flat.length = 80;
    flat.base_level = 60.0;
    flat.noise_std = 2.0;
    flat.n_terms = 4;
    flat.term_noise_std = 4.0;
    flat.seed = 101;
    out.emplace_back("stationary-flat", flat);

    Scenario seasonal;
    seasonal.length = 80;
    seasonal.base_level = 55.0;
    seasonal.seasonal_amplitude = 10.0;
    seasonal.noise_std = 2.0;
    seasonal.n_terms = 4;
    seasonal.term_noise_std = 4.0;
    seasonal.seed = 102;
    out.emplace_back("stationary-seasonal", seasonal);

    // Abrupt drop mid-series, as after a vaccine media scare.
    Scenario scare;
    scare.length = 80;
    scare.base_level = 70.0;
    scare.change_points = {{40, 35.0}};
    scare.noise_std = 2.5;
    scare.n_terms = 4;
    scare.term_lag = 1;
    scare.term_noise_std = 4.0;
    scare.seed = 103;
    out.emplace_back("media-scare", scare);

    // Temporary dip and partial recovery, as under a supply shortage.
    Scenario shortage;
    shortage.length = 80;
    shortage.base_level = 65.0;
    shortage.change_points = {{35, 30.0}, {55, 55.0}};
    shortage.noise_std = 2.5;
    shortage.n_terms = 4;
    shortage.term_lag = 1;
    shortage.term_noise_std = 4.0;
    shortage.seed = 104;
    out.emplace_back("supply-shortage", shortage);

    // Slow upward drift via staggered level steps.
    Scenario drift;
    drift.length = 80;
    drift.base_level = 40.0;
    drift.change_points = {{30, 48.0}, {45, 56.0}, {60, 64.0}};
    drift.noise_std = 2.0;
    drift.seasonal_amplitude = 5.0;
    drift.n_terms = 4;
    drift.term_noise_std = 4.0;
    drift.seed = 105;
    out.emplace_back("schedule-drift", drift);

    return out;
}

}  // namespace atse
