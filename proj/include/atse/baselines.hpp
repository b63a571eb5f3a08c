#pragma once

#include <cstddef>
#include <vector>

#include "atse/featurization.hpp"
#include "atse/online_estimator.hpp"

namespace atse {

struct EnetHyper {
    double lambda = 0.0;  // overall penalty
    double alpha = 1.0;   // L1 mixing; 1 = lasso, 0 = ridge
};

// Linear model in raw feature space. Fitting standardizes features and
// centers the target internally; coefficients here are already mapped back.
struct LinearModel {
    std::vector<double> coefficients;
    double intercept = 0.0;
    bool converged = true;

    double predict(const FeatureVector& x) const;
};

// sign(z) * max(|z| - gamma, 0)
double soft_threshold(double z, double gamma);

// Cyclic coordinate descent on
//   (1/2m) sum (y_i - x_i.b)^2 + lambda (alpha |b|_1 + (1-alpha)/2 |b|_2^2)
// over z-scored features and centered y. Zero-variance features get
// coefficient 0. Non-convergence is flagged on the model, not an error.
// objective_path, when given, records the penalized objective after each
// sweep for descent monitoring.
LinearModel fit_enet(const std::vector<FeatureVector>& X, const std::vector<double>& y,
                     const EnetHyper& hyper, double tol = 1e-8,
                     std::size_t max_iter = 10000,
                     std::vector<double>* objective_path = nullptr);

// k-fold CV over contiguous time blocks (unshuffled); lowest mean validation
// MSE wins, ties to smaller lambda then larger alpha, then first occurrence.
EnetHyper cv_select(const std::vector<FeatureVector>& X, const std::vector<double>& y,
                    const std::vector<EnetHyper>& grid, std::size_t k = 3);

// Smallest lasso penalty that zeroes every coefficient (standardized scale).
double lasso_lambda_max(const std::vector<FeatureVector>& X, const std::vector<double>& y);

enum class BaselineKind { lasso, elastic_net };

// Default hyperparameter grid: 50 log-spaced lambdas in [1e-4, 1e2]; alpha
// fixed at 1 for lasso, {0.1, 0.3, 0.5, 0.7, 0.9} for elastic net.
std::vector<EnetHyper> default_grid(BaselineKind kind);

// Walk-forward baseline: at each step, cross-validate on all prior data,
// refit on all of it, predict the current step. Same trace shape and step
// range as the adaptive estimator so reports are directly comparable.
EstimationTrace run_baseline(const Dataset& ds, BaselineKind kind,
                             const FeatureSchema& schema, std::size_t warmup);

}  // namespace atse
