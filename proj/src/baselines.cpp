#include "atse/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "atse/errors.hpp"
#include "atse/evaluation.hpp"
#include "atse/kernels.hpp"

namespace atse {

double soft_threshold(double z, double gamma) {
    if (gamma < 0.0) throw ParameterError("soft_threshold: gamma must be >= 0");
    if (z > gamma) return z - gamma;
    if (z < -gamma) return z + gamma;
    return 0.0;
}

double LinearModel::predict(const FeatureVector& x) const {
    if (x.size() != coefficients.size())
        throw ShapeError("LinearModel: input has " + std::to_string(x.size()) +
                         " features, model has " + std::to_string(coefficients.size()));
    return intercept + kernels::dot(coefficients, x);
}

namespace {

struct Standardized {
    std::vector<std::vector<double>> cols;  // z-scored columns, zero-variance zeroed
    std::vector<double> mean;
    std::vector<double> stddev;  // 0 marks a dropped column
    std::vector<double> yc;      // centered target
    double y_mean = 0.0;
};

Standardized standardize(const std::vector<FeatureVector>& X, const std::vector<double>& y) {
    std::size_t m = X.size();
    std::size_t f = X.empty() ? 0 : X[0].size();
    for (const auto& row : X)
        if (row.size() != f) throw ShapeError("fit_enet: ragged feature matrix");

    Standardized s;
    s.mean.assign(f, 0.0);
    s.stddev.assign(f, 0.0);
    s.cols.assign(f, std::vector<double>(m, 0.0));
    double dm = static_cast<double>(m);
    for (std::size_t j = 0; j < f; ++j) {
        double sum = 0.0;
        double sumsq = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            sum += X[i][j];
            sumsq += X[i][j] * X[i][j];
        }
        double mean = sum / dm;
        double var = sumsq / dm - mean * mean;
        s.mean[j] = mean;
        if (var > 0.0) {
            double sd = std::sqrt(var);
            s.stddev[j] = sd;
            for (std::size_t i = 0; i < m; ++i) s.cols[j][i] = (X[i][j] - mean) / sd;
        }
    }
    s.y_mean = kernels::sum(y) / dm;
    s.yc.resize(m);
    for (std::size_t i = 0; i < m; ++i) s.yc[i] = y[i] - s.y_mean;
    return s;
}

}  // namespace

LinearModel fit_enet(const std::vector<FeatureVector>& X, const std::vector<double>& y,
                     const EnetHyper& hyper, double tol, std::size_t max_iter,
                     std::vector<double>* objective_path) {
    std::size_t m = X.size();
    if (m < 2 || y.size() != m)
        throw ParameterError("fit_enet: need at least 2 samples with matching targets");
    if (hyper.lambda < 0.0 || hyper.alpha < 0.0 || hyper.alpha > 1.0)
        throw ParameterError("fit_enet: lambda must be >= 0 and alpha in [0, 1]");

    Standardized s = standardize(X, y);
    std::size_t f = s.mean.size();
    double dm = static_cast<double>(m);
    double l1 = hyper.lambda * hyper.alpha;
    double l2 = hyper.lambda * (1.0 - hyper.alpha);

    std::vector<double> beta(f, 0.0);
    std::vector<double> residual = s.yc;

    bool converged = f == 0;
    for (std::size_t iter = 0; iter < max_iter && !converged; ++iter) {
        double max_delta = 0.0;
        for (std::size_t j = 0; j < f; ++j) {
            if (s.stddev[j] == 0.0) continue;
            // (1/m) sum col_j^2 = 1 under z-scoring, so the coordinate
            // solution is soft_threshold(rho, l1) / (1 + l2).
            double rho = kernels::dot(s.cols[j], residual) / dm + beta[j];
            double updated = soft_threshold(rho, l1) / (1.0 + l2);
            double delta = updated - beta[j];
            if (delta != 0.0) {
                kernels::axpy(-delta, s.cols[j], residual);
                beta[j] = updated;
            }
            max_delta = std::max(max_delta, std::abs(delta));
        }
        if (objective_path) {
            double obj = kernels::sumsq(residual) / (2.0 * dm);
            for (std::size_t j = 0; j < f; ++j)
                obj += l1 * std::abs(beta[j]) + 0.5 * l2 * beta[j] * beta[j];
            objective_path->push_back(obj);
        }
        if (max_delta < tol) converged = true;
    }

    LinearModel model;
    model.converged = converged;
    model.coefficients.assign(f, 0.0);
    model.intercept = s.y_mean;
    for (std::size_t j = 0; j < f; ++j) {
        if (s.stddev[j] == 0.0) continue;
        model.coefficients[j] = beta[j] / s.stddev[j];
        model.intercept -= model.coefficients[j] * s.mean[j];
    }
    return model;
}

double lasso_lambda_max(const std::vector<FeatureVector>& X, const std::vector<double>& y) {
    if (X.size() < 2) throw ParameterError("lasso_lambda_max: need at least 2 samples");
    Standardized s = standardize(X, y);
    double best = 0.0;
    for (std::size_t j = 0; j < s.mean.size(); ++j) {
        if (s.stddev[j] == 0.0) continue;
        best = std::max(best, std::abs(kernels::dot(s.cols[j], s.yc)) /
                                  static_cast<double>(X.size()));
    }
    return best;
}

EnetHyper cv_select(const std::vector<FeatureVector>& X, const std::vector<double>& y,
                    const std::vector<EnetHyper>& grid, std::size_t k) {
    std::size_t m = X.size();
    if (grid.empty()) throw ParameterError("cv_select: empty grid");
    if (k < 2) throw ParameterError("cv_select: need at least 2 folds");
    if (m < k) throw ParameterError("cv_select: fewer samples than folds");

    // Contiguous time blocks; fold f covers [f*m/k, (f+1)*m/k).
    std::vector<std::size_t> bounds(k + 1);
    for (std::size_t f = 0; f <= k; ++f) bounds[f] = f * m / k;

    EnetHyper best;
    double best_mse = std::numeric_limits<double>::infinity();
    bool have_best = false;
    for (const EnetHyper& hyper : grid) {
        double total = 0.0;
        for (std::size_t f = 0; f < k; ++f) {
            std::vector<FeatureVector> x_train;
            std::vector<double> y_train;
            for (std::size_t i = 0; i < m; ++i) {
                if (i >= bounds[f] && i < bounds[f + 1]) continue;
                x_train.push_back(X[i]);
                y_train.push_back(y[i]);
            }
            LinearModel model = fit_enet(x_train, y_train, hyper);
            double sse = 0.0;
            for (std::size_t i = bounds[f]; i < bounds[f + 1]; ++i) {
                double err = model.predict(X[i]) - y[i];
                sse += err * err;
            }
            total += sse / static_cast<double>(bounds[f + 1] - bounds[f]);
        }
        double mse = total / static_cast<double>(k);
        bool better = !have_best || mse < best_mse ||
                      (mse == best_mse &&
                       (hyper.lambda < best.lambda ||
                        (hyper.lambda == best.lambda && hyper.alpha > best.alpha)));
        if (better) {
            best = hyper;
            best_mse = mse;
            have_best = true;
        }
    }
    return best;
}

std::vector<EnetHyper> default_grid(BaselineKind kind) {
    std::vector<double> lambdas;
    for (int i = 0; i < 50; ++i)
        lambdas.push_back(std::pow(10.0, -4.0 + 6.0 * i / 49.0));
    std::vector<double> alphas =
        kind == BaselineKind::lasso ? std::vector<double>{1.0}
                                    : std::vector<double>{0.1, 0.3, 0.5, 0.7, 0.9};
    std::vector<EnetHyper> grid;
    for (double a : alphas)
        for (double l : lambdas) grid.push_back({l, a});
    return grid;
}

EstimationTrace run_baseline(const Dataset& ds, BaselineKind kind,
                             const FeatureSchema& schema, std::size_t warmup) {
    std::size_t first = std::max(warmup, schema.n_lags) + 1;
    if (ds.size() <= first)
        throw InsufficientHistoryError("run_baseline: dataset too short for warmup");
    auto grid = default_grid(kind);

    EstimationTrace trace;
    for (std::size_t t = first; t < ds.size(); ++t) {
        TrainingData data = training_matrix(ds, schema, t);
        EnetHyper hyper = cv_select(data.rows, data.targets, grid);
        LinearModel model = fit_enet(data.rows, data.targets, hyper);
        double pred = model.predict(feature_vector_at(ds, schema, t));
        trace.steps.push_back({t, pred, ds.uptake().value_at(t)});
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
