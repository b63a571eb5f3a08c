#pragma once

#include <iosfwd>
#include <string>

#include "atse/online_estimator.hpp"

namespace atse {

// Flat key=value estimator config document ('#' comments, blank lines ok).
// Keys mirror EstimatorConfig fields exactly; unknown keys are errors so
// typos in tuning studies fail loudly:
//   eta, n_trees, warmup, window_lo, window_hi, n_lags, n_web,
//   max_depth, min_samples_leaf, min_impurity_decrease, master_seed
EstimatorConfig parse_config(std::istream& in);
EstimatorConfig load_config(const std::string& path);
void write_config(std::ostream& out, const EstimatorConfig& cfg);

}  // namespace atse
