#include "atse/ingestion.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace atse {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_number(const std::string& field, std::size_t line_no) {
    const char* begin = field.c_str();
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v))
        throw FormatError("line " + std::to_string(line_no) + ": bad numeric value '" +
                          field + "'");
    return v;
}

// Reads logical lines with the trailing \r of CRLF input stripped; skips a
// final empty line.
std::vector<std::string> read_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

MonthIndex parse_month_field(const std::string& field, std::size_t line_no) {
    try {
        return MonthIndex::parse(field);
    } catch (const FormatError& e) {
        throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
}

void check_contiguous(const MonthIndex& prev, const MonthIndex& cur, std::size_t line_no) {
    if (cur != prev.successor()) {
        if (cur <= prev)
            throw FormatError("line " + std::to_string(line_no) + ": month " + cur.str() +
                              " does not follow " + prev.str() + " (months must increase)");
        throw AlignmentError("line " + std::to_string(line_no) + ": gap between " +
                             prev.str() + " and " + cur.str());
    }
}

std::string format_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

UptakeSeries parse_uptake_csv(std::istream& in, IngestReport* report) {
    auto lines = read_lines(in);
    if (lines.empty()) throw FormatError("line 1: missing header");

    bool raw_form;
    if (lines[0] == "month,vaccinated,birth_cohort") {
        raw_form = true;
    } else if (lines[0] == "month,uptake_percent") {
        raw_form = false;
    } else {
        throw FormatError(
            "line 1: unrecognized header '" + lines[0] +
            "', expected 'month,vaccinated,birth_cohort' or 'month,uptake_percent'");
    }

    std::vector<double> values;
    MonthIndex start{};
    MonthIndex prev{};
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::size_t line_no = i + 1;
        auto fields = split_fields(lines[i]);
        std::size_t expected = raw_form ? 3u : 2u;
        if (fields.size() != expected)
            throw FormatError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(expected) + " fields, got " +
                              std::to_string(fields.size()));
        MonthIndex m = parse_month_field(fields[0], line_no);
        if (values.empty())
            start = m;
        else
            check_contiguous(prev, m, line_no);
        prev = m;

        double uptake;
        if (raw_form) {
            double vaccinated = parse_number(fields[1], line_no);
            double cohort = parse_number(fields[2], line_no);
            if (cohort <= 0.0)
                throw ValueError("line " + std::to_string(line_no) +
                                 ": birth_cohort must be > 0, got " + fields[2]);
            if (vaccinated < 0.0)
                throw ValueError("line " + std::to_string(line_no) +
                                 ": vaccinated must be >= 0, got " + fields[1]);
            uptake = 100.0 * vaccinated / cohort;
        } else {
            uptake = parse_number(fields[1], line_no);
            if (uptake < 0.0)
                throw ValueError("line " + std::to_string(line_no) +
                                 ": uptake_percent must be >= 0, got " + fields[1]);
        }
        values.push_back(uptake);
    }
    if (values.empty()) throw FormatError("no data rows after header");
    if (report) report->rows_read = values.size();
    return UptakeSeries(start, std::move(values));
}

QueryPanel parse_query_csv(std::istream& in, IngestReport* report) {
    auto lines = read_lines(in);
    if (lines.empty()) throw FormatError("line 1: missing header");

    auto header = split_fields(lines[0]);
    if (header.empty() || header[0] != "month")
        throw FormatError("line 1: header must start with 'month'");
    std::vector<std::string> terms(header.begin() + 1, header.end());
    std::set<std::string> seen;
    for (const auto& t : terms) {
        if (t.empty()) throw FormatError("line 1: empty term label");
        if (!seen.insert(t).second)
            throw FormatError("line 1: duplicate term label '" + t + "'");
    }

    std::vector<std::vector<double>> rows(terms.size());
    MonthIndex start{};
    MonthIndex prev{};
    std::size_t n_rows = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::size_t line_no = i + 1;
        auto fields = split_fields(lines[i]);
        if (fields.size() != header.size())
            throw FormatError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(header.size()) + " fields, got " +
                              std::to_string(fields.size()));
        MonthIndex m = parse_month_field(fields[0], line_no);
        if (n_rows == 0)
            start = m;
        else
            check_contiguous(prev, m, line_no);
        prev = m;

        for (std::size_t c = 0; c < terms.size(); ++c) {
            double v = parse_number(fields[c + 1], line_no);
            if (v < 0.0 || v > 100.0)
                throw ValueError("line " + std::to_string(line_no) + ": term '" + terms[c] +
                                 "' value " + fields[c + 1] + " outside [0, 100]");
            rows[c].push_back(v);
        }
        ++n_rows;
    }
    if (n_rows == 0) throw FormatError("no data rows after header");
    if (report) report->rows_read = n_rows;
    if (terms.empty()) return QueryPanel(start, n_rows);
    return QueryPanel(start, std::move(terms), std::move(rows));
}

Dataset align(const UptakeSeries& uptake, const QueryPanel& panel) {
    if (uptake.size() == 0 || panel.n_months() == 0)
        throw AlignmentError("align: empty input");
    MonthIndex lo = std::max(uptake.start(), panel.start());
    MonthIndex hi = std::min(uptake.last_month(), panel.last_month());
    if (hi < lo)
        throw AlignmentError("align: disjoint ranges, uptake " + uptake.start().str() + ".." +
                             uptake.last_month().str() + " vs panel " + panel.start().str() +
                             ".." + panel.last_month().str());
    std::size_t n = static_cast<std::size_t>(lo.months_until(hi)) + 1;

    std::size_t u_off = static_cast<std::size_t>(uptake.start().months_until(lo));
    std::vector<double> u(uptake.values().begin() + u_off,
                          uptake.values().begin() + u_off + n);

    std::size_t p_off = static_cast<std::size_t>(panel.start().months_until(lo));
    std::vector<std::vector<double>> rows;
    rows.reserve(panel.n_terms());
    for (std::size_t term = 0; term < panel.n_terms(); ++term) {
        const auto& r = panel.row(term);
        rows.emplace_back(r.begin() + p_off, r.begin() + p_off + n);
    }
    QueryPanel trimmed = panel.n_terms() == 0
                             ? QueryPanel(lo, n)
                             : QueryPanel(lo, panel.terms(), std::move(rows));
    return Dataset(UptakeSeries(lo, std::move(u)), std::move(trimmed));
}

void write_uptake_csv(std::ostream& out, const UptakeSeries& series) {
    out << "month,uptake_percent\n";
    for (std::size_t t = 0; t < series.size(); ++t)
        out << series.month_at(t).str() << ',' << format_number(series.values()[t]) << '\n';
}

void write_query_csv(std::ostream& out, const QueryPanel& panel) {
    out << "month";
    for (const auto& term : panel.terms()) out << ',' << term;
    out << '\n';
    for (std::size_t t = 0; t < panel.n_months(); ++t) {
        out << panel.start().plus(static_cast<long long>(t)).str();
        for (std::size_t term = 0; term < panel.n_terms(); ++term)
            out << ',' << format_number(panel.value_at(term, t));
        out << '\n';
    }
}

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return in;
}

}  // namespace

UptakeSeries load_uptake_csv(const std::string& path, IngestReport* report) {
    auto in = open_or_throw(path);
    try {
        return parse_uptake_csv(in, report);
    } catch (const Error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

QueryPanel load_query_csv(const std::string& path, IngestReport* report) {
    auto in = open_or_throw(path);
    try {
        return parse_query_csv(in, report);
    } catch (const Error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

}  // namespace atse
