#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "atse/errors.hpp"

namespace atse {

// Calendar month. All algorithm code works in 0-based step space; MonthIndex
// only appears at the I/O boundary and when mapping steps back to dates.
struct MonthIndex {
    int year = 0;
    int month = 1;  // 1..12

    auto operator<=>(const MonthIndex&) const = default;

    MonthIndex successor() const {
        return month == 12 ? MonthIndex{year + 1, 1} : MonthIndex{year, month + 1};
    }
    MonthIndex predecessor() const {
        return month == 1 ? MonthIndex{year - 1, 12} : MonthIndex{year, month - 1};
    }
    MonthIndex plus(long long k) const;

    // Signed number of months from *this to other.
    long long months_until(const MonthIndex& other) const {
        return (static_cast<long long>(other.year) - year) * 12 + (other.month - month);
    }

    std::string str() const;  // "YYYY-MM"
    static MonthIndex parse(const std::string& text);
};

// Monthly vaccination uptake in percent of the birth cohort. Values above
// 100 are legal (catch-up vaccination).
class UptakeSeries {
public:
    UptakeSeries(MonthIndex start, std::vector<double> values);

    const MonthIndex& start() const { return start_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }

    double value_at(std::size_t t) const {
        if (t >= values_.size())
            throw ParameterError("UptakeSeries: step " + std::to_string(t) +
                                 " out of range [0, " + std::to_string(values_.size()) + ")");
        return values_[t];
    }

    MonthIndex month_at(std::size_t t) const { return start_.plus(static_cast<long long>(t)); }
    MonthIndex last_month() const;

private:
    MonthIndex start_;
    std::vector<double> values_;
};

// Monthly query-frequency panel on the Google Trends 0..100 scale, one row
// per term, all rows the same length.
class QueryPanel {
public:
    QueryPanel(MonthIndex start, std::vector<std::string> terms,
               std::vector<std::vector<double>> rows);
    // Term-less panel still spans a month range (month column only).
    QueryPanel(MonthIndex start, std::size_t n_months);

    const MonthIndex& start() const { return start_; }
    std::size_t n_terms() const { return terms_.size(); }
    std::size_t n_months() const { return n_months_; }
    const std::vector<std::string>& terms() const { return terms_; }
    const std::vector<double>& row(std::size_t term) const { return rows_.at(term); }

    double value_at(std::size_t term, std::size_t t) const {
        if (term >= terms_.size()) throw ParameterError("QueryPanel: term index out of range");
        if (t >= n_months_) throw ParameterError("QueryPanel: step out of range");
        return rows_[term][t];
    }

    MonthIndex last_month() const;

private:
    MonthIndex start_;
    std::vector<std::string> terms_;
    std::vector<std::vector<double>> rows_;
    std::size_t n_months_ = 0;
};

// Aligned uptake + panel pair; the single source of truth for time indexing.
// Construction rejects any start/length mismatch.
class Dataset {
public:
    Dataset(UptakeSeries uptake, QueryPanel panel);

    const UptakeSeries& uptake() const { return uptake_; }
    const QueryPanel& panel() const { return panel_; }
    std::size_t size() const { return uptake_.size(); }

    std::pair<MonthIndex, MonthIndex> month_range() const;

private:
    UptakeSeries uptake_;
    QueryPanel panel_;
};

}  // namespace atse
