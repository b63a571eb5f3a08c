#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "atse/baselines.hpp"
#include "atse/online_estimator.hpp"

namespace atse {

double rmse(const std::vector<double>& predictions, const std::vector<double>& observations);

// Hyperparameter search space. Defaults are the tuner's standard intervals:
// window 1-46, lag features 0-45, web features 0-30, trees 500-10000, eta
// 0.001-0.25.
struct SearchIntervals {
    std::pair<std::size_t, std::size_t> window{1, 46};
    std::pair<std::size_t, std::size_t> n_lags{0, 45};
    std::pair<std::size_t, std::size_t> n_web{0, 30};
    std::pair<std::size_t, std::size_t> n_trees{500, 10000};
    std::pair<double, double> eta{0.001, 0.25};

    void validate() const;
};

struct SearchTrial {
    std::size_t index = 0;
    EstimatorConfig config;
    double rmse = 0.0;  // +inf for configs that cannot run
};

struct SearchResult {
    EstimatorConfig best;
    std::vector<SearchTrial> trials;
};

// Uniform random search: integer draws for counts, continuous for eta. Each
// trial samples a window interval (1, hi) with hi uniform in the window
// range, keeping per-tree window diversity inside a trial. Trials are scored
// by walk-forward RMSE over predicted steps in [tune_begin, tune_end); the
// lowest-RMSE trial wins, ties to the earlier trial. Sampled n_web is
// clamped to the panel's term count.
SearchResult random_search(const Dataset& ds, const SearchIntervals& intervals,
                           std::size_t n_samples, std::size_t tune_begin,
                           std::size_t tune_end, std::uint64_t seed,
                           std::size_t warmup = 24,
                           const TreeParams& tree_params = {});

struct MethodSpec {
    enum class Kind { atse, lasso, elastic_net };
    std::string name;
    Kind kind = Kind::atse;
    EstimatorConfig config;      // atse only
    std::size_t n_lags = 3;      // baseline schema
    std::size_t n_web = 3;
    std::size_t warmup = 24;
};

struct ReportRow {
    std::string series;
    std::string method;
    double rmse = 0.0;
    std::size_t n_predictions = 0;
    bool best = false;
};

struct ComparisonReport {
    std::vector<ReportRow> rows;
};

// Runs every method on every named dataset and flags the per-series best
// (ties to the first listed method). RMSE is computed over the intersection
// of all methods' predicted steps, further clipped to eval_range when given.
ComparisonReport compare(const std::vector<std::pair<std::string, Dataset>>& datasets,
                         const std::vector<MethodSpec>& methods,
                         std::optional<std::pair<std::size_t, std::size_t>> eval_range =
                             std::nullopt);

// "series,method,rmse,n_predictions,best" rows.
void write_report_csv(std::ostream& out, const ComparisonReport& report);
// JSON array mirroring the CSV columns.
void write_report_json(std::ostream& out, const ComparisonReport& report);

}  // namespace atse
