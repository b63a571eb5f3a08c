#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "atse/timeseries.hpp"

namespace atse {

struct IngestReport {
    std::size_t rows_read = 0;
    std::vector<std::string> warnings;
};

// Uptake CSV, two accepted schemas:
//   month,vaccinated,birth_cohort   (uptake computed as 100*vaccinated/cohort)
//   month,uptake_percent            (pre-computed)
// Months are YYYY-MM, strictly increasing, contiguous. Errors carry 1-based
// line numbers. No clamping or imputation anywhere.
UptakeSeries parse_uptake_csv(std::istream& in, IngestReport* report = nullptr);

// Query panel CSV: header "month,<term1>,<term2>,...", values in [0, 100].
QueryPanel parse_query_csv(std::istream& in, IngestReport* report = nullptr);

// Intersect the two month ranges; error if the intersection is empty.
Dataset align(const UptakeSeries& uptake, const QueryPanel& panel);

// Serializers emitting exactly the formats above (pre-computed uptake schema).
void write_uptake_csv(std::ostream& out, const UptakeSeries& series);
void write_query_csv(std::ostream& out, const QueryPanel& panel);

// File-path conveniences.
UptakeSeries load_uptake_csv(const std::string& path, IngestReport* report = nullptr);
QueryPanel load_query_csv(const std::string& path, IngestReport* report = nullptr);

}  // namespace atse
