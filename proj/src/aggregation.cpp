#include "atse/aggregation.hpp"

#include <cmath>

#include "atse/errors.hpp"
#include "atse/kernels.hpp"

namespace atse {

WeightVector init_weights(std::size_t n) {
    if (n == 0) throw ParameterError("init_weights: need at least one expert");
    return WeightVector{std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

double aggregate_predict(const WeightVector& w, const std::vector<double>& preds) {
    if (preds.size() != w.size())
        throw ShapeError("aggregate_predict: " + std::to_string(preds.size()) +
                         " predictions for " + std::to_string(w.size()) + " weights");
    return kernels::dot(w.w, preds);
}

WeightVector update_weights(const WeightVector& w, const std::vector<double>& preds,
                            double y, double eta) {
    std::size_t n = w.size();
    if (preds.size() != n)
        throw ShapeError("update_weights: " + std::to_string(preds.size()) +
                         " predictions for " + std::to_string(n) + " weights");
    if (eta < 0.0) throw ParameterError("update_weights: eta must be >= 0");
    if (!std::isfinite(y)) throw ValueError("update_weights: observation is not finite");
    for (double p : preds)
        if (!std::isfinite(p)) throw ValueError("update_weights: non-finite prediction");

    // logits[i] = log w[i] - eta * (preds[i] - y)^2; log(0) = -inf is fine,
    // a zero weight stays zero.
    std::vector<double> logits(n);
    kernels::scaled_sq_err(preds, y, eta, logits);

    // Equal losses (including eta = 0) cancel under normalization; return the
    // input bit-identically rather than round-tripping through log/exp.
    bool all_equal = true;
    for (std::size_t i = 1; i < n && all_equal; ++i) all_equal = logits[i] == logits[0];
    if (all_equal) return w;

    for (std::size_t i = 0; i < n; ++i) logits[i] = std::log(w.w[i]) - logits[i];

    double shift = kernels::max(logits);
    WeightVector out{std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) out.w[i] = std::exp(logits[i] - shift);
    double total = kernels::sum(out.w);  // >= 1, the max term contributes exp(0)
    for (double& v : out.w) v /= total;
    return out;
}

}  // namespace atse
