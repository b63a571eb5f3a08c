#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "atse/featurization.hpp"
#include "atse/rng.hpp"

using namespace atse;

namespace {

Dataset make_dataset(std::vector<double> uptake,
                     std::vector<std::vector<double>> term_rows) {
    MonthIndex start{2011, 1};
    std::vector<std::string> terms;
    for (std::size_t i = 0; i < term_rows.size(); ++i)
        terms.push_back("q" + std::to_string(i));
    QueryPanel panel = term_rows.empty()
                           ? QueryPanel(start, uptake.size())
                           : QueryPanel(start, std::move(terms), std::move(term_rows));
    return Dataset(UptakeSeries(start, std::move(uptake)), std::move(panel));
}

// Plain textbook Pearson correlation, independent of the library's kernels.
double pearson(const std::vector<double>& x, const std::vector<double>& y, std::size_t n) {
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace

TEST_CASE("select_terms: trivial cases") {
    auto ds = make_dataset({10, 20, 30, 25, 15, 20},
                           {{10, 20, 30, 25, 15, 20},      // exact copy of uptake
                            {50, 50, 50, 50, 50, 50},      // constant
                            {90, 10, 20, 70, 30, 60}});    // noise
    CHECK(select_terms(ds, 0, 6).empty());
    auto top1 = select_terms(ds, 1, 6);
    REQUIRE(top1.size() == 1);
    CHECK(top1[0] == 0);  // |corr| = 1 beats everything
    CHECK_THROWS_AS(select_terms(ds, 4, 6), ParameterError);
}

TEST_CASE("select_terms: matches brute-force correlation ranking") {
    Rng rng(4242);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 6;
        std::vector<double> uptake(n);
        for (double& v : uptake) v = rng.uniform_real(0, 100);
        std::vector<std::vector<double>> rows(3, std::vector<double>(n));
        for (auto& row : rows)
            for (double& v : row) v = rng.uniform_real(0, 100);
        auto ds = make_dataset(uptake, rows);

        auto got = select_terms(ds, 2, n);

        std::vector<std::pair<double, std::size_t>> scored;
        for (std::size_t t = 0; t < 3; ++t)
            scored.emplace_back(std::abs(pearson(ds.panel().row(t), uptake, n)), t);
        std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
            return a.first > b.first;
        });
        REQUIRE(got.size() == 2);
        CHECK(got[0] == scored[0].second);
        CHECK(got[1] == scored[1].second);
    }
}

TEST_CASE("select_terms: permutation equivariance") {
    // Distinct |correlation| scores: with ties, the column-order rule would
    // make the selection depend on positions and equivariance would not hold.
    std::vector<double> uptake{5, 9, 2, 7, 4, 8, 1, 6};
    std::vector<std::vector<double>> rows{{1, 2, 3, 4, 5, 6, 7, 8},
                                          {8, 7, 9, 5, 4, 3, 2, 1},
                                          {5, 9, 2, 7, 4, 8, 1, 7}};
    auto ds = make_dataset(uptake, rows);
    auto base = select_terms(ds, 3, 8);

    // Swap columns 0 and 2; the selection permutes the same way.
    auto ds2 = make_dataset(uptake, {rows[2], rows[1], rows[0]});
    auto swapped = select_terms(ds2, 3, 8);
    auto mapped = base;
    for (auto& idx : mapped) idx = idx == 0 ? 2 : (idx == 2 ? 0 : idx);
    CHECK(swapped == mapped);
}

TEST_CASE("feature_vector_at: lag ordering and web-at-t") {
    auto ds = make_dataset({10, 20, 30}, {{1, 2, 3}});
    FeatureSchema schema{2, {0}};
    auto x = feature_vector_at(ds, schema, 2);
    REQUIRE(x.size() == 3);
    CHECK(x[0] == 20.0);  // lag 1 first
    CHECK(x[1] == 10.0);
    CHECK(x[2] == 3.0);   // web frequency at t itself
    CHECK_THROWS_AS(feature_vector_at(ds, schema, 1), InsufficientHistoryError);

    FeatureSchema empty{0, {}};
    CHECK(feature_vector_at(ds, empty, 0).empty());
}

TEST_CASE("feature_vector_at: causality in the target") {
    auto ds1 = make_dataset({10, 20, 30, 40}, {{1, 2, 3, 4}});
    auto ds2 = make_dataset({10, 20, 99, 77}, {{1, 2, 3, 4}});  // steps >= 2 poisoned
    FeatureSchema schema{2, {0}};
    CHECK(feature_vector_at(ds1, schema, 2) == feature_vector_at(ds2, schema, 2));
}

TEST_CASE("training_matrix: row count and degenerate schema") {
    auto ds = make_dataset({10, 20, 30}, {{1, 2, 3}});
    FeatureSchema schema{1, {}};
    auto data = training_matrix(ds, schema, 3);
    CHECK(data.rows.size() == 2);
    CHECK(data.targets == std::vector<double>{20.0, 30.0});
    CHECK(data.rows[0] == FeatureVector{10.0});

    CHECK_THROWS_AS(training_matrix(ds, schema, 1), InsufficientHistoryError);

    FeatureSchema empty{0, {}};
    auto d2 = training_matrix(ds, empty, 3);
    CHECK(d2.rows.size() == 3);
    CHECK(d2.rows[0].empty());
}
