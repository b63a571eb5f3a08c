#include "atse/timeseries.hpp"

#include <cmath>
#include <cstdio>

namespace atse {

namespace {

void check_month(int month, const std::string& context) {
    if (month < 1 || month > 12)
        throw ValueError(context + ": month " + std::to_string(month) + " outside 1..12");
}

}  // namespace

MonthIndex MonthIndex::plus(long long k) const {
    long long zero_based = static_cast<long long>(year) * 12 + (month - 1) + k;
    long long y = zero_based >= 0 ? zero_based / 12 : -((-zero_based + 11) / 12);
    long long m = zero_based - y * 12;
    return MonthIndex{static_cast<int>(y), static_cast<int>(m) + 1};
}

std::string MonthIndex::str() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
    return buf;
}

MonthIndex MonthIndex::parse(const std::string& text) {
    int y = 0;
    int m = 0;
    char trailing = 0;
    if (std::sscanf(text.c_str(), "%d-%d%c", &y, &m, &trailing) != 2)
        throw FormatError("bad month '" + text + "', expected YYYY-MM");
    check_month(m, "month '" + text + "'");
    return MonthIndex{y, m};
}

UptakeSeries::UptakeSeries(MonthIndex start, std::vector<double> values)
    : start_(start), values_(std::move(values)) {
    check_month(start.month, "UptakeSeries start");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        double v = values_[i];
        if (!std::isfinite(v) || v < 0.0)
            throw ValueError("UptakeSeries: value at step " + std::to_string(i) +
                             " must be finite and >= 0, got " + std::to_string(v));
    }
}

MonthIndex UptakeSeries::last_month() const {
    if (values_.empty()) throw ParameterError("UptakeSeries: empty series has no last month");
    return start_.plus(static_cast<long long>(values_.size()) - 1);
}

QueryPanel::QueryPanel(MonthIndex start, std::vector<std::string> terms,
                       std::vector<std::vector<double>> rows)
    : start_(start), terms_(std::move(terms)), rows_(std::move(rows)) {
    check_month(start.month, "QueryPanel start");
    if (terms_.size() != rows_.size())
        throw ShapeError("QueryPanel: " + std::to_string(terms_.size()) + " terms but " +
                         std::to_string(rows_.size()) + " rows");
    if (rows_.empty()) throw ParameterError("QueryPanel: term-less panel needs explicit month count");
    n_months_ = rows_[0].size();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].size() != n_months_)
            throw ShapeError("QueryPanel: term '" + terms_[i] + "' has " +
                             std::to_string(rows_[i].size()) + " values, expected " +
                             std::to_string(n_months_));
        for (double v : rows_[i])
            if (!std::isfinite(v) || v < 0.0 || v > 100.0)
                throw ValueError("QueryPanel: term '" + terms_[i] +
                                 "' has value outside [0, 100]: " + std::to_string(v));
    }
}

QueryPanel::QueryPanel(MonthIndex start, std::size_t n_months)
    : start_(start), n_months_(n_months) {
    check_month(start.month, "QueryPanel start");
}

MonthIndex QueryPanel::last_month() const {
    if (n_months_ == 0) throw ParameterError("QueryPanel: empty panel has no last month");
    return start_.plus(static_cast<long long>(n_months_) - 1);
}

Dataset::Dataset(UptakeSeries uptake, QueryPanel panel)
    : uptake_(std::move(uptake)), panel_(std::move(panel)) {
    if (uptake_.size() == 0) throw ParameterError("Dataset: empty uptake series");
    if (uptake_.start() != panel_.start() || uptake_.size() != panel_.n_months())
        throw AlignmentError("Dataset: uptake covers " + uptake_.start().str() + " x" +
                             std::to_string(uptake_.size()) + " but panel covers " +
                             panel_.start().str() + " x" + std::to_string(panel_.n_months()));
}

std::pair<MonthIndex, MonthIndex> Dataset::month_range() const {
    return {uptake_.start(), uptake_.last_month()};
}

}  // namespace atse
