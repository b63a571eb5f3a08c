#include "doctest.h"

#include "atse/rng.hpp"
#include "atse/timeseries.hpp"

using namespace atse;

TEST_CASE("MonthIndex: arithmetic and ordering") {
    MonthIndex m{2011, 12};
    CHECK(m.successor() == MonthIndex{2012, 1});
    CHECK(m.successor().predecessor() == m);
    CHECK(MonthIndex{2011, 1} < MonthIndex{2011, 2});
    CHECK(MonthIndex{2010, 12} < MonthIndex{2011, 1});
    CHECK(MonthIndex{2011, 1}.months_until(MonthIndex{2016, 6}) == 65);
    CHECK(m.plus(13) == MonthIndex{2013, 1});
    CHECK(m.plus(-12) == MonthIndex{2010, 12});
    CHECK(m.str() == "2011-12");
    CHECK(MonthIndex::parse("2011-03") == MonthIndex{2011, 3});
    CHECK_THROWS_AS(MonthIndex::parse("2011-13"), ValueError);
    CHECK_THROWS_AS(MonthIndex::parse("garbage"), FormatError);
}

TEST_CASE("MonthIndex: successor/predecessor round trip") {
    MonthIndex m{2000, 7};
    MonthIndex cur = m;
    for (int k = 0; k < 1200; ++k) cur = cur.successor();
    CHECK(cur == m.plus(1200));
    for (int k = 0; k < 1200; ++k) cur = cur.predecessor();
    CHECK(cur == m);
}

TEST_CASE("UptakeSeries: value access and bounds") {
    UptakeSeries s(MonthIndex{2011, 1}, {10.0, 20.0, 30.0});
    CHECK(s.value_at(0) == 10.0);
    CHECK(s.value_at(2) == 30.0);
    CHECK_THROWS_AS(s.value_at(3), ParameterError);
    CHECK(s.month_at(2) == MonthIndex{2011, 3});
    // Catch-up vaccination can push uptake past 100 percent.
    CHECK_NOTHROW(UptakeSeries(MonthIndex{2011, 1}, {120.0}));
    CHECK_THROWS_AS(UptakeSeries(MonthIndex{2011, 1}, {-1.0}), ValueError);
}

TEST_CASE("QueryPanel: validation") {
    QueryPanel p(MonthIndex{2011, 1}, {"a", "b"}, {{0.0, 1.0}, {100.0, 50.0}});
    CHECK(p.n_terms() == 2);
    CHECK(p.n_months() == 2);
    CHECK(p.value_at(1, 0) == 100.0);
    CHECK_THROWS_AS(QueryPanel(MonthIndex{2011, 1}, {"a"}, {{101.0}}), ValueError);
    CHECK_THROWS_AS(QueryPanel(MonthIndex{2011, 1}, {"a", "b"}, {{1.0}, {1.0, 2.0}}),
                    ShapeError);
}

TEST_CASE("Dataset: month range") {
    auto make = [](std::size_t n) {
        std::vector<double> v(n, 1.0);
        std::vector<double> q(n, 1.0);
        return Dataset(UptakeSeries(MonthIndex{2011, 1}, v),
                       QueryPanel(MonthIndex{2011, 1}, {"a"}, {q}));
    };
    auto [lo1, hi1] = make(1).month_range();
    CHECK(lo1 == MonthIndex{2011, 1});
    CHECK(hi1 == MonthIndex{2011, 1});
    auto [lo, hi] = make(66).month_range();
    CHECK(lo == MonthIndex{2011, 1});
    CHECK(hi == MonthIndex{2016, 6});

    std::vector<double> v13(13, 1.0);
    Dataset d13(UptakeSeries(MonthIndex{2011, 12}, v13),
                QueryPanel(MonthIndex{2011, 12}, {"a"}, {std::vector<double>(13, 1.0)}));
    auto [lo2, hi2] = d13.month_range();
    CHECK(lo2 == MonthIndex{2011, 12});
    CHECK(hi2 == MonthIndex{2012, 12});
}

// Property: any random misalignment of start or length is rejected.
TEST_CASE("Dataset: misaligned pairs rejected") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 30));
        long long shift = rng.uniform_int(-5, 5);
        long long extra = rng.uniform_int(-3, 3);
        if (shift == 0 && extra == 0) continue;
        std::size_t pn = static_cast<std::size_t>(
            std::max<long long>(1, static_cast<long long>(n) + extra));
        UptakeSeries u(MonthIndex{2011, 1}, std::vector<double>(n, 1.0));
        QueryPanel p(MonthIndex{2011, 1}.plus(shift), {"a"},
                     {std::vector<double>(pn, 1.0)});
        if (shift == 0 && pn == n) continue;
        CHECK_THROWS_AS(Dataset(u, p), AlignmentError);
    }
}
