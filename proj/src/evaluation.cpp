#include "atse/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "atse/errors.hpp"
#include "atse/kernels.hpp"
#include "atse/rng.hpp"

#include "json.hpp"

namespace atse {

double rmse(const std::vector<double>& predictions, const std::vector<double>& observations) {
    if (predictions.empty() || predictions.size() != observations.size())
        throw ParameterError("rmse: need equal non-empty prediction/observation lists");
    double sse = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        double d = predictions[i] - observations[i];
        sse += d * d;
    }
    return std::sqrt(sse / static_cast<double>(predictions.size()));
}

void SearchIntervals::validate() const {
    if (window.first > window.second || n_lags.first > n_lags.second ||
        n_web.first > n_web.second || n_trees.first > n_trees.second ||
        eta.first > eta.second)
        throw ParameterError("search intervals: every interval needs lo <= hi");
    if (window.first == 0) throw ParameterError("search intervals: window lo must be >= 1");
    if (n_trees.first == 0) throw ParameterError("search intervals: n_trees lo must be >= 1");
    if (eta.first < 0.0) throw ParameterError("search intervals: eta lo must be >= 0");
}

namespace {

// RMSE of a trace restricted to predicted steps in [begin, end); +inf when
// no predictions fall in the range.
double range_rmse(const EstimationTrace& trace, std::size_t begin, std::size_t end) {
    std::vector<double> preds;
    std::vector<double> obs;
    for (const auto& s : trace.steps) {
        if (s.t < begin || s.t >= end) continue;
        preds.push_back(s.prediction);
        obs.push_back(s.observation);
    }
    if (preds.empty()) return std::numeric_limits<double>::infinity();
    return rmse(preds, obs);
}

std::string format_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

SearchResult random_search(const Dataset& ds, const SearchIntervals& intervals,
                           std::size_t n_samples, std::size_t tune_begin,
                           std::size_t tune_end, std::uint64_t seed, std::size_t warmup,
                           const TreeParams& tree_params) {
    intervals.validate();
    if (n_samples == 0) throw ParameterError("random_search: need at least one trial");
    if (tune_begin >= tune_end || tune_end > ds.size())
        throw ParameterError("random_search: bad tune range [" +
                             std::to_string(tune_begin) + ", " + std::to_string(tune_end) +
                             ")");

    Rng rng(seed);
    SearchResult result;
    result.trials.reserve(n_samples);
    std::size_t best_index = 0;
    double best_rmse = std::numeric_limits<double>::infinity();
    bool have_best = false;

    for (std::size_t trial = 0; trial < n_samples; ++trial) {
        EstimatorConfig cfg;
        cfg.warmup = warmup;
        cfg.tree_params = tree_params;
        cfg.window_lo = intervals.window.first;
        cfg.window_hi = static_cast<std::size_t>(rng.uniform_int(
            static_cast<long long>(intervals.window.first),
            static_cast<long long>(intervals.window.second)));
        cfg.n_lags = static_cast<std::size_t>(
            rng.uniform_int(static_cast<long long>(intervals.n_lags.first),
                            static_cast<long long>(intervals.n_lags.second)));
        cfg.n_web = std::min(
            static_cast<std::size_t>(
                rng.uniform_int(static_cast<long long>(intervals.n_web.first),
                                static_cast<long long>(intervals.n_web.second))),
            ds.panel().n_terms());
        cfg.n_trees = static_cast<std::size_t>(
            rng.uniform_int(static_cast<long long>(intervals.n_trees.first),
                            static_cast<long long>(intervals.n_trees.second)));
        cfg.eta = rng.uniform_real(intervals.eta.first, intervals.eta.second);
        cfg.master_seed = derive_seed(seed, trial);

        double score = std::numeric_limits<double>::infinity();
        try {
            EstimationTrace trace = run(ds, cfg);
            score = range_rmse(trace, tune_begin, tune_end);
        } catch (const Error&) {
            // Infeasible sample (e.g. zero features, lags beyond data):
            // logged with infinite score, never the winner.
        }
        result.trials.push_back({trial, cfg, score});
        if (!have_best || score < best_rmse) {
            best_index = trial;
            best_rmse = score;
            have_best = true;
        }
    }
    if (!std::isfinite(best_rmse))
        throw ParameterError("random_search: no feasible trial in " +
                             std::to_string(n_samples) + " samples");
    result.best = result.trials[best_index].config;
    return result;
}

ComparisonReport compare(const std::vector<std::pair<std::string, Dataset>>& datasets,
                         const std::vector<MethodSpec>& methods,
                         std::optional<std::pair<std::size_t, std::size_t>> eval_range) {
    if (datasets.empty() || methods.empty())
        throw ParameterError("compare: need at least one dataset and one method");

    ComparisonReport report;
    for (const auto& [series_name, ds] : datasets) {
        std::vector<EstimationTrace> traces;
        for (const MethodSpec& method : methods) {
            try {
                if (method.kind == MethodSpec::Kind::atse) {
                    traces.push_back(run(ds, method.config));
                } else {
                    FeatureSchema schema = FeatureSchema::make(
                        ds, method.n_lags, std::min(method.n_web, ds.panel().n_terms()),
                        method.warmup);
                    BaselineKind kind = method.kind == MethodSpec::Kind::lasso
                                            ? BaselineKind::lasso
                                            : BaselineKind::elastic_net;
                    traces.push_back(run_baseline(ds, kind, schema, method.warmup));
                }
            } catch (const Error& e) {
                throw Error("compare: series '" + series_name + "', method '" +
                            method.name + "': " + e.what());
            }
        }

        // Common predicted range across all methods on this series.
        std::size_t begin = 0;
        std::size_t end = ds.size();
        for (const auto& trace : traces) {
            begin = std::max(begin, trace.steps.front().t);
            end = std::min(end, trace.steps.back().t + 1);
        }
        if (eval_range) {
            begin = std::max(begin, eval_range->first);
            end = std::min(end, eval_range->second);
        }
        if (begin >= end)
            throw ParameterError("compare: series '" + series_name +
                                 "' has an empty common predicted range");

        std::size_t best_row = report.rows.size();
        double best_rmse = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < methods.size(); ++m) {
            ReportRow row;
            row.series = series_name;
            row.method = methods[m].name;
            row.rmse = range_rmse(traces[m], begin, end);
            row.n_predictions = end - begin;
            if (row.rmse < best_rmse) {
                best_rmse = row.rmse;
                best_row = report.rows.size();
            }
            report.rows.push_back(std::move(row));
        }
        report.rows[best_row].best = true;
    }
    return report;
}

void write_report_csv(std::ostream& out, const ComparisonReport& report) {
    out << "series,method,rmse,n_predictions,best\n";
    for (const auto& row : report.rows)
        out << row.series << ',' << row.method << ',' << format_number(row.rmse) << ','
            << row.n_predictions << ',' << (row.best ? "1" : "0") << '\n';
}

void write_report_json(std::ostream& out, const ComparisonReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows)
        rows.push_back({{"series", row.series},
                        {"method", row.method},
                        {"rmse", row.rmse},
                        {"n_predictions", row.n_predictions},
                        {"best", row.best}});
    out << rows.dump(2) << '\n';
}

}  // namespace atse
