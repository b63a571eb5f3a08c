#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "atse/timeseries.hpp"

namespace atse {

// The complete feature set tree experts sample from: lags 1..n_lags of the
// target ("vaccination data" features) followed by the same-month
// frequencies of the selected query terms ("web data" features). Uptake
// enters only through lags, never at the current step; web frequencies are
// available near real-time and are read at the current step.
struct FeatureSchema {
    std::size_t n_lags = 0;
    std::vector<std::size_t> term_indices;

    std::size_t size() const { return n_lags + term_indices.size(); }
    std::vector<std::string> labels(const QueryPanel& panel) const;

    static FeatureSchema make(const Dataset& ds, std::size_t n_lags, std::size_t n_web,
                              std::size_t train_end);
};

using FeatureVector = std::vector<double>;

struct TrainingData {
    std::vector<FeatureVector> rows;
    std::vector<double> targets;
};

// Top-k_w panel terms by |Pearson correlation| with uptake over steps
// [0, train_end). Ties break by panel column order; zero-variance terms rank
// last with score 0. Selection happens once on the initial training window
// and is never refreshed online.
std::vector<std::size_t> select_terms(const Dataset& ds, std::size_t k_w,
                                      std::size_t train_end);

FeatureVector feature_vector_at(const Dataset& ds, const FeatureSchema& schema,
                                std::size_t t);

// One row per t in [n_lags, t_end), pairing feature_vector_at(t) with
// uptake(t).
TrainingData training_matrix(const Dataset& ds, const FeatureSchema& schema,
                             std::size_t t_end);

}  // namespace atse
