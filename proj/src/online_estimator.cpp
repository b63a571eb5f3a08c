#include "atse/online_estimator.hpp"

#include <cmath>

#include "atse/errors.hpp"
#include "atse/evaluation.hpp"

namespace atse {

void EstimatorConfig::validate() const {
    if (eta < 0.0 || !std::isfinite(eta)) throw ParameterError("config: eta must be finite and >= 0");
    if (n_trees == 0) throw ParameterError("config: n_trees must be >= 1");
    if (warmup == 0) throw ParameterError("config: warmup must be >= 1");
    if (window_lo > window_hi) throw ParameterError("config: window_lo > window_hi");
    if (n_lags + n_web == 0) throw ParameterError("config: n_lags + n_web must be >= 1");
}

OnlineEstimator::OnlineEstimator(const Dataset& ds, const EstimatorConfig& cfg)
    : ds_(ds), cfg_(cfg), weights_(init_weights(1)), t_(cfg.first_step()) {
    cfg_.validate();
    if (ds.size() <= cfg_.first_step())
        throw InsufficientHistoryError(
            "estimator: dataset has " + std::to_string(ds.size()) +
            " months, need more than " + std::to_string(cfg_.first_step()));
    // Terms are picked once on the warmup window and frozen for the run.
    schema_ = FeatureSchema::make(ds, cfg_.n_lags,
                                  std::min(cfg_.n_web, ds.panel().n_terms()),
                                  cfg_.warmup);
    pool_.specs = init_specs(schema_.size(), cfg_.n_trees, cfg_.window_lo, cfg_.window_hi,
                             cfg_.tree_params, cfg_.master_seed);
    weights_ = init_weights(cfg_.n_trees);
}

double OnlineEstimator::step_predict(std::size_t t) {
    if (pending_)
        throw ProtocolError("step_predict: previous prediction not yet observed");
    if (t != t_)
        throw ProtocolError("step_predict: expected step " + std::to_string(t_) + ", got " +
                            std::to_string(t));
    if (t >= ds_.size()) throw ParameterError("step_predict: step beyond dataset");

    retrain(pool_, ds_, schema_, t);
    FeatureVector x = feature_vector_at(ds_, schema_, t);
    pending_ = predict_all(pool_, x);
    return aggregate_predict(weights_, *pending_);
}

void OnlineEstimator::step_observe(double y) {
    if (!pending_) throw ProtocolError("step_observe: no pending prediction");
    if (!std::isfinite(y)) throw ValueError("step_observe: observation is not finite");
    weights_ = update_weights(weights_, *pending_, y, cfg_.eta);
    pending_.reset();
    ++t_;
}

EstimationTrace run(const Dataset& ds, const EstimatorConfig& cfg,
                    bool keep_weights_history) {
    OnlineEstimator est(ds, cfg);
    EstimationTrace trace;
    for (std::size_t t = cfg.first_step(); t < ds.size(); ++t) {
        double pred = est.step_predict(t);
        double obs = ds.uptake().value_at(t);
        est.step_observe(obs);
        trace.steps.push_back({t, pred, obs});
        if (keep_weights_history) trace.weights_history.push_back(est.weights());
    }
    std::vector<double> preds;
    std::vector<double> obs;
    for (const auto& s : trace.steps) {
        preds.push_back(s.prediction);
        obs.push_back(s.observation);
    }
    trace.rmse = rmse(preds, obs);
    return trace;
}

}  // namespace atse
