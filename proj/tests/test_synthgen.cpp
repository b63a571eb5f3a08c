#include "doctest.h"

#include <cmath>

#include "atse/synthgen.hpp"

using namespace atse;

namespace {

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(a.size());
    mb /= static_cast<double>(b.size());
    double num = 0.0, da = 0.0, db = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += (a[i] - ma) * (b[i] - mb);
        da += (a[i] - ma) * (a[i] - ma);
        db += (b[i] - mb) * (b[i] - mb);
    }
    return num / std::sqrt(da * db);
}

}  // namespace

TEST_CASE("generate: noiseless flat scenario is exactly the base level") {
    Scenario sc;
    sc.length = 24;
    sc.base_level = 55.0;
    sc.n_terms = 0;
    Dataset ds = generate(sc);
    CHECK(ds.uptake().size() == 24);
    CHECK(ds.panel().n_terms() == 0);
    CHECK(ds.uptake().start() == MonthIndex{2011, 1});
    for (double v : ds.uptake().values()) CHECK(v == 55.0);
}

TEST_CASE("generate: noiseless change point shifts the level exactly") {
    Scenario sc;
    sc.length = 60;
    sc.base_level = 70.0;
    sc.change_points = {{40, 35.0}};
    sc.n_terms = 0;
    Dataset ds = generate(sc);
    for (std::size_t t = 0; t < 40; ++t) CHECK(ds.uptake().value_at(t) == 70.0);
    for (std::size_t t = 40; t < 60; ++t) CHECK(ds.uptake().value_at(t) == 35.0);
}

TEST_CASE("generate: seasonality has period 12 and the stated amplitude") {
    Scenario sc;
    sc.length = 48;
    sc.base_level = 50.0;
    sc.seasonal_amplitude = 10.0;
    sc.n_terms = 0;
    Dataset ds = generate(sc);
    const auto& v = ds.uptake().values();
    for (std::size_t t = 0; t + 12 < 48; ++t)
        CHECK(v[t] == doctest::Approx(v[t + 12]).epsilon(1e-9));
    // Peak of sin at t=3 (2*pi*3/12 = pi/2).
    CHECK(v[3] == doctest::Approx(60.0).epsilon(1e-12));
    CHECK(v[9] == doctest::Approx(40.0).epsilon(1e-12));
}

TEST_CASE("generate: same seed reproduces the dataset exactly") {
    Scenario sc;
    sc.length = 50;
    sc.noise_std = 3.0;
    sc.seasonal_amplitude = 4.0;
    sc.n_terms = 3;
    sc.term_noise_std = 6.0;
    sc.term_lag = 2;
    sc.seed = 909;
    Dataset a = generate(sc);
    Dataset b = generate(sc);
    CHECK(a.uptake().values() == b.uptake().values());
    for (std::size_t k = 0; k < 3; ++k) CHECK(a.panel().row(k) == b.panel().row(k));

    sc.seed = 910;
    Dataset c = generate(sc);
    CHECK(a.uptake().values() != c.uptake().values());
}

TEST_CASE("generate: query frequencies stay inside [0, 100]") {
    Scenario sc;
    sc.length = 120;
    sc.noise_std = 5.0;
    sc.n_terms = 5;
    sc.term_noise_std = 40.0;  // heavy noise to force clipping
    sc.seed = 17;
    Dataset ds = generate(sc);
    for (std::size_t k = 0; k < 5; ++k)
        for (double v : ds.panel().row(k)) {
            CHECK(v >= 0.0);
            CHECK(v <= 100.0);
        }
}

TEST_CASE("generate: noiseless lag-0 terms correlate perfectly with uptake") {
    Scenario sc;
    sc.length = 40;
    sc.base_level = 50.0;
    sc.seasonal_amplitude = 8.0;
    sc.noise_std = 2.0;
    sc.n_terms = 2;
    sc.term_lag = 0;
    sc.term_noise_std = 0.0;
    sc.seed = 4;
    Dataset ds = generate(sc);
    for (std::size_t k = 0; k < 2; ++k)
        CHECK(pearson(ds.uptake().values(), ds.panel().row(k)) ==
              doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("generate: term_lag makes queries lead the target") {
    Scenario sc;
    sc.length = 30;
    sc.base_level = 60.0;
    sc.change_points = {{20, 20.0}};
    sc.n_terms = 1;
    sc.term_lag = 3;
    Dataset ds = generate(sc);
    const auto& row = ds.panel().row(0);
    // Query drop appears 3 months before the uptake drop.
    CHECK(row[16] == 100.0);
    CHECK(row[17] == 0.0);
    CHECK(ds.uptake().value_at(19) == 60.0);
    CHECK(ds.uptake().value_at(20) == 20.0);
}

TEST_CASE("scenario validation") {
    Scenario sc;
    sc.length = 0;
    CHECK_THROWS_AS(sc.validate(), ParameterError);
    sc.length = 10;
    sc.noise_std = -1.0;
    CHECK_THROWS_AS(sc.validate(), ParameterError);
    sc.noise_std = 0.0;
    sc.change_points = {{12, 5.0}};
    CHECK_THROWS_AS(sc.validate(), ParameterError);  // beyond series
    sc.change_points = {{3, 5.0}, {3, 6.0}};
    CHECK_THROWS_AS(sc.validate(), ParameterError);  // not increasing
}

TEST_CASE("canonical_scenarios: five named presets, all generable") {
    auto presets = canonical_scenarios();
    REQUIRE(presets.size() == 5);
    CHECK(presets[0].first == "stationary-flat");
    CHECK(presets[1].first == "stationary-seasonal");
    CHECK(presets[2].first == "media-scare");
    CHECK(presets[3].first == "supply-shortage");
    CHECK(presets[4].first == "schedule-drift");
    for (const auto& [name, sc] : presets) {
        Dataset ds = generate(sc);
        CHECK(ds.uptake().size() == 80);
        CHECK(ds.panel().n_terms() == 4);
    }
    // Regime-shift presets really shift: compare means around the first break.
    for (std::size_t i : {2u, 3u, 4u}) {
        Dataset ds = generate(presets[i].second);
        std::size_t cut = presets[i].second.change_points.front().first;
        double before = 0.0, after = 0.0;
        for (std::size_t t = cut - 10; t < cut; ++t) before += ds.uptake().value_at(t);
        for (std::size_t t = cut; t < cut + 10; ++t) after += ds.uptake().value_at(t);
        CHECK(std::abs(before - after) / 10.0 > 5.0);
    }
}
