#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "atse/featurization.hpp"
#include "atse/regression_tree.hpp"
#include "atse/rng.hpp"

namespace atse {

// One expert: a fixed feature multiset (drawn with replacement at init), a
// fixed window size and a private seed. Specs never change over a run; only
// the fitted trees refresh each step.
struct TreeSpec {
    std::vector<std::size_t> feature_multiset;
    std::size_t window = 0;
    std::uint64_t seed = 0;
    TreeParams params;
};

struct ExpertPool {
    std::vector<TreeSpec> specs;
    std::vector<FittedTree> fitted;  // aligned with specs after retrain
};

// Initial expert population: each spec draws F feature indices with
// replacement from [0, F) and a window uniform in [window_lo, window_hi].
// Per-expert seeds derive from (master_seed, expert index).
std::vector<TreeSpec> init_specs(std::size_t n_features, std::size_t n_experts,
                                 std::size_t window_lo, std::size_t window_hi,
                                 const TreeParams& params, std::uint64_t master_seed);

// Bootstrap draw for one expert at step t. Relative index 0 is the most
// recent completed observation t-1; draws are uniform with replacement from
// relative [0, min(s, t-1)], clipped further so no absolute step falls below
// min_step (steps without full lag history). Returns min(s, t-1)+1 absolute
// steps.
std::vector<std::size_t> window_sample(const TreeSpec& spec, std::size_t t, Rng& rng,
                                       std::size_t min_step = 0);

// Refits every expert on its window bootstrap over history strictly before
// t. The per-expert stream is seeded by (spec seed, t) so results do not
// depend on expert evaluation order.
void retrain(ExpertPool& pool, const Dataset& ds, const FeatureSchema& schema,
             std::size_t t);

// Per-expert predictions for a feature vector, spec order.
std::vector<double> predict_all(const ExpertPool& pool, const FeatureVector& x);

}  // namespace atse
