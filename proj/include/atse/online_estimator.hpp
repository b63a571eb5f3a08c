#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "atse/aggregation.hpp"
#include "atse/ensemble.hpp"
#include "atse/featurization.hpp"

namespace atse {

struct EstimatorConfig {
    double eta = 0.01;
    std::size_t n_trees = 1000;
    std::size_t warmup = 24;
    std::size_t window_lo = 1;
    std::size_t window_hi = 46;
    std::size_t n_lags = 3;
    std::size_t n_web = 3;
    TreeParams tree_params;
    std::uint64_t master_seed = 0;

    void validate() const;

    // First 0-based step with both a full warmup history and all lags.
    std::size_t first_step() const { return std::max(warmup, n_lags) + 1; }
};

struct TraceStep {
    std::size_t t = 0;
    double prediction = 0.0;
    double observation = 0.0;
};

struct EstimationTrace {
    std::vector<TraceStep> steps;
    std::vector<WeightVector> weights_history;  // empty unless requested
    double rmse = 0.0;
};

// Streaming driver: warm-start on the first max(warmup, n_lags)+1 steps, then
// strictly alternate predict(t) / observe(y_t). predict retrains every expert
// on history before t and returns the weight-averaged forecast; observe
// applies the exponential weight update using the cached per-expert
// predictions and advances time. Reads uptake only at steps < t and web
// frequencies only at steps <= t.
class OnlineEstimator {
public:
    OnlineEstimator(const Dataset& ds, const EstimatorConfig& cfg);

    std::size_t current_step() const { return t_; }
    const WeightVector& weights() const { return weights_; }
    const FeatureSchema& schema() const { return schema_; }
    const std::vector<TreeSpec>& specs() const { return pool_.specs; }
    bool has_pending() const { return pending_.has_value(); }

    double step_predict(std::size_t t);
    void step_observe(double y);

private:
    const Dataset& ds_;
    EstimatorConfig cfg_;
    FeatureSchema schema_;
    ExpertPool pool_;
    WeightVector weights_;
    std::size_t t_;
    std::optional<std::vector<double>> pending_;  // per-expert predictions
};

// Batch driver executing the same loop to dataset end. Bit-identical to the
// streaming interface on the same inputs.
EstimationTrace run(const Dataset& ds, const EstimatorConfig& cfg,
                    bool keep_weights_history = false);

}  // namespace atse
