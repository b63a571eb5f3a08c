#include "doctest.h"

#include <sstream>

#include "atse/ingestion.hpp"
#include "atse/synthgen.hpp"

using namespace atse;

namespace {

UptakeSeries uptake_from(const std::string& text) {
    std::istringstream in(text);
    return parse_uptake_csv(in);
}

QueryPanel panel_from(const std::string& text) {
    std::istringstream in(text);
    return parse_query_csv(in);
}

template <typename E, typename F>
bool throws_mentioning(F&& fn, const std::string& fragment) {
    try {
        fn();
    } catch (const E& e) {
        return std::string(e.what()).find(fragment) != std::string::npos;
    } catch (...) {
        return false;
    }
    return false;
}

}  // namespace

TEST_CASE("parse_uptake_csv: raw count form") {
    auto s = uptake_from("month,vaccinated,birth_cohort\n2011-01,500,1000\n");
    CHECK(s.size() == 1);
    CHECK(s.start() == MonthIndex{2011, 1});
    CHECK(s.value_at(0) == doctest::Approx(50.0));
}

TEST_CASE("parse_uptake_csv: precomputed form, zero allowed") {
    auto s = uptake_from("month,uptake_percent\n2011-01,0\n");
    CHECK(s.value_at(0) == 0.0);
}

TEST_CASE("parse_uptake_csv: error cases with line numbers") {
    CHECK(throws_mentioning<FormatError>([] { uptake_from("bogus\n2011-01,1\n"); },
                                         "line 1"));
    // Month gap.
    CHECK(throws_mentioning<AlignmentError>(
        [] { uptake_from("month,uptake_percent\n2011-01,1\n2011-03,2\n"); }, "line 3"));
    // Decreasing months.
    CHECK_THROWS_AS(uptake_from("month,uptake_percent\n2011-02,1\n2011-01,2\n"),
                    FormatError);
    CHECK_THROWS_AS(uptake_from("month,vaccinated,birth_cohort\n2011-01,5,0\n"), ValueError);
    CHECK_THROWS_AS(uptake_from("month,vaccinated,birth_cohort\n2011-01,-5,10\n"),
                    ValueError);
    CHECK_THROWS_AS(uptake_from("month,uptake_percent\n"), FormatError);
}

TEST_CASE("parse_query_csv: basic forms") {
    auto p = panel_from("month,hpv\n2011-01,37.5\n");
    CHECK(p.n_terms() == 1);
    CHECK(p.terms()[0] == "hpv");
    CHECK(p.value_at(0, 0) == 37.5);

    auto p2 = panel_from("month,a,b\n2011-01,0,100\n");
    CHECK(p2.value_at(0, 0) == 0.0);
    CHECK(p2.value_at(1, 0) == 100.0);
}

TEST_CASE("parse_query_csv: errors") {
    CHECK_THROWS_AS(panel_from("month,a\n2011-01,101\n"), ValueError);
    CHECK_THROWS_AS(panel_from("month,a,a\n2011-01,1,2\n"), FormatError);
    CHECK(throws_mentioning<FormatError>([] { panel_from("month,a,b\n2011-01,1\n"); },
                                         "line 2"));
}

TEST_CASE("align: intersection semantics") {
    UptakeSeries u(MonthIndex{2011, 1}, std::vector<double>(12, 1.0));
    QueryPanel p(MonthIndex{2011, 6}, {"a"}, {std::vector<double>(13, 2.0)});
    Dataset ds = align(u, p);
    CHECK(ds.size() == 7);
    CHECK(ds.month_range().first == MonthIndex{2011, 6});
    CHECK(ds.month_range().second == MonthIndex{2011, 12});

    // Identical ranges pass through.
    QueryPanel p2(MonthIndex{2011, 1}, {"a"}, {std::vector<double>(12, 2.0)});
    CHECK(align(u, p2).size() == 12);

    // Disjoint ranges fail.
    QueryPanel p3(MonthIndex{2014, 1}, {"a"}, {std::vector<double>(3, 2.0)});
    CHECK_THROWS_AS(align(u, p3), AlignmentError);
}

TEST_CASE("csv round trip: parse(serialize(x)) == x") {
    Scenario sc;
    sc.length = 30;
    sc.noise_std = 3.0;
    sc.seasonal_amplitude = 8.0;
    sc.n_terms = 3;
    sc.term_noise_std = 5.0;
    sc.seed = 7;
    Dataset ds = generate(sc);

    std::ostringstream u_out;
    write_uptake_csv(u_out, ds.uptake());
    auto u2 = uptake_from(u_out.str());
    CHECK(u2.start() == ds.uptake().start());
    CHECK(u2.values() == ds.uptake().values());

    std::ostringstream q_out;
    write_query_csv(q_out, ds.panel());
    auto p2 = panel_from(q_out.str());
    CHECK(p2.terms() == ds.panel().terms());
    for (std::size_t t = 0; t < p2.n_terms(); ++t) CHECK(p2.row(t) == ds.panel().row(t));

    // Serializing the reparsed data is byte-identical.
    std::ostringstream u_out2;
    write_uptake_csv(u_out2, u2);
    CHECK(u_out.str() == u_out2.str());
}
