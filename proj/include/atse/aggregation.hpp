#pragma once

#include <cstddef>
#include <vector>

namespace atse {

// Probability simplex over the expert pool. Weights live on the simplex at
// all times; the update runs in log space with a max shift so that eta *
// squared-error products far beyond double exp range cannot underflow the
// whole vector to zero.
struct WeightVector {
    std::vector<double> w;

    std::size_t size() const { return w.size(); }
};

// Uniform 1/N weights.
WeightVector init_weights(std::size_t n);

// Weighted-average forecast: dot(w, preds).
double aggregate_predict(const WeightVector& w, const std::vector<double>& preds);

// Exponential multiplicative update: w'[n] proportional to
// w[n] * exp(-eta * (preds[n] - y)^2), renormalized.
WeightVector update_weights(const WeightVector& w, const std::vector<double>& preds,
                            double y, double eta);

}  // namespace atse
