#include "atse/featurization.hpp"

#include <algorithm>
#include <cmath>

#include "atse/kernels.hpp"

namespace atse {

std::vector<std::string> FeatureSchema::labels(const QueryPanel& panel) const {
    std::vector<std::string> out;
    out.reserve(size());
    for (std::size_t k = 1; k <= n_lags; ++k) out.push_back("lag_" + std::to_string(k));
    for (std::size_t idx : term_indices) out.push_back("term_" + panel.terms().at(idx));
    return out;
}

FeatureSchema FeatureSchema::make(const Dataset& ds, std::size_t n_lags, std::size_t n_web,
                                  std::size_t train_end) {
    FeatureSchema schema;
    schema.n_lags = n_lags;
    schema.term_indices = select_terms(ds, n_web, train_end);
    return schema;
}

std::vector<std::size_t> select_terms(const Dataset& ds, std::size_t k_w,
                                      std::size_t train_end) {
    const QueryPanel& panel = ds.panel();
    if (k_w > panel.n_terms())
        throw ParameterError("select_terms: k_w=" + std::to_string(k_w) + " exceeds " +
                             std::to_string(panel.n_terms()) + " panel terms");
    if (k_w == 0) return {};
    if (train_end < 2 || train_end > ds.size())
        throw ParameterError("select_terms: train_end must be in [2, dataset length]");

    std::span<const double> y(ds.uptake().values().data(), train_end);
    double n = static_cast<double>(train_end);
    double y_mean = kernels::sum(y) / n;
    double y_var = kernels::sumsq(y) / n - y_mean * y_mean;

    std::vector<double> scores(panel.n_terms(), 0.0);
    for (std::size_t term = 0; term < panel.n_terms(); ++term) {
        std::span<const double> x(panel.row(term).data(), train_end);
        double x_mean = kernels::sum(x) / n;
        double x_var = kernels::sumsq(x) / n - x_mean * x_mean;
        if (x_var <= 0.0 || y_var <= 0.0) continue;  // undefined correlation -> score 0
        double cov = kernels::dot(x, y) / n - x_mean * y_mean;
        scores[term] = std::abs(cov / std::sqrt(x_var * y_var));
    }

    std::vector<std::size_t> order(panel.n_terms());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    order.resize(k_w);
    return order;
}

FeatureVector feature_vector_at(const Dataset& ds, const FeatureSchema& schema,
                                std::size_t t) {
    if (t < schema.n_lags)
        throw InsufficientHistoryError("feature_vector_at: step " + std::to_string(t) +
                                       " has fewer than " + std::to_string(schema.n_lags) +
                                       " preceding observations");
    if (t >= ds.size())
        throw ParameterError("feature_vector_at: step out of range");

    FeatureVector x;
    x.reserve(schema.size());
    for (std::size_t k = 1; k <= schema.n_lags; ++k)
        x.push_back(ds.uptake().value_at(t - k));
    for (std::size_t idx : schema.term_indices) x.push_back(ds.panel().value_at(idx, t));
    return x;
}

TrainingData training_matrix(const Dataset& ds, const FeatureSchema& schema,
                             std::size_t t_end) {
    if (t_end > ds.size()) throw ParameterError("training_matrix: t_end beyond dataset");
    if (t_end <= schema.n_lags)
        throw InsufficientHistoryError("training_matrix: no steps in [" +
                                       std::to_string(schema.n_lags) + ", " +
                                       std::to_string(t_end) + ")");
    TrainingData data;
    data.rows.reserve(t_end - schema.n_lags);
    data.targets.reserve(t_end - schema.n_lags);
    for (std::size_t t = schema.n_lags; t < t_end; ++t) {
        data.rows.push_back(feature_vector_at(ds, schema, t));
        data.targets.push_back(ds.uptake().value_at(t));
    }
    return data;
}

}  // namespace atse
