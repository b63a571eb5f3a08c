#include "atse/ensemble.hpp"

#include <string>

#include "atse/errors.hpp"

namespace atse {

std::vector<TreeSpec> init_specs(std::size_t n_features, std::size_t n_experts,
                                 std::size_t window_lo, std::size_t window_hi,
                                 const TreeParams& params, std::uint64_t master_seed) {
    if (n_experts == 0) throw ParameterError("init_specs: need at least one expert");
    if (n_features == 0) throw ParameterError("init_specs: empty feature set");
    if (window_lo > window_hi) throw ParameterError("init_specs: window_lo > window_hi");

    std::vector<TreeSpec> specs;
    specs.reserve(n_experts);
    for (std::size_t n = 0; n < n_experts; ++n) {
        TreeSpec spec;
        spec.seed = derive_seed(master_seed, n);
        spec.params = params;
        Rng rng(spec.seed);
        spec.feature_multiset.reserve(n_features);
        for (std::size_t i = 0; i < n_features; ++i)
            spec.feature_multiset.push_back(
                static_cast<std::size_t>(rng.uniform_below(n_features)));
        spec.window = static_cast<std::size_t>(
            rng.uniform_int(static_cast<long long>(window_lo),
                            static_cast<long long>(window_hi)));
        specs.push_back(std::move(spec));
    }
    return specs;
}

std::vector<std::size_t> window_sample(const TreeSpec& spec, std::size_t t, Rng& rng,
                                       std::size_t min_step) {
    if (t == 0)
        throw InsufficientHistoryError("window_sample: no completed observations at t=0");
    std::size_t newest = t - 1;  // relative index 0
    if (newest < min_step)
        throw InsufficientHistoryError("window_sample: no step in [" +
                                       std::to_string(min_step) + ", " +
                                       std::to_string(t) + ") with full history");
    std::size_t max_rel = std::min(spec.window, newest);
    std::size_t max_valid_rel = std::min(max_rel, newest - min_step);
    std::size_t n_draws = max_rel + 1;  // bootstrap size = window length

    std::vector<std::size_t> steps;
    steps.reserve(n_draws);
    for (std::size_t i = 0; i < n_draws; ++i) {
        std::size_t r = static_cast<std::size_t>(rng.uniform_below(max_valid_rel + 1));
        steps.push_back(newest - r);
    }
    return steps;
}

void retrain(ExpertPool& pool, const Dataset& ds, const FeatureSchema& schema,
             std::size_t t) {
    if (pool.specs.empty()) throw ParameterError("retrain: empty pool");
    if (t < schema.n_lags + 1)
        throw InsufficientHistoryError("retrain: need at least one step with full lags");
    if (t > ds.size()) throw ParameterError("retrain: t beyond dataset");

    pool.fitted.clear();
    pool.fitted.reserve(pool.specs.size());
    for (const TreeSpec& spec : pool.specs) {
        Rng rng(derive_seed(spec.seed, t));
        auto steps = window_sample(spec, t, rng, schema.n_lags);
        std::vector<FeatureVector> X;
        std::vector<double> y;
        X.reserve(steps.size());
        y.reserve(steps.size());
        for (std::size_t step : steps) {
            X.push_back(feature_vector_at(ds, schema, step));
            y.push_back(ds.uptake().value_at(step));
        }
        pool.fitted.push_back(fit_tree(X, y, spec.feature_multiset, spec.params));
    }
}

std::vector<double> predict_all(const ExpertPool& pool, const FeatureVector& x) {
    if (pool.fitted.size() != pool.specs.size())
        throw ProtocolError("predict_all: pool has not been retrained");
    std::vector<double> preds;
    preds.reserve(pool.fitted.size());
    for (const FittedTree& tree : pool.fitted) preds.push_back(tree.predict(x));
    return preds;
}

}  // namespace atse
