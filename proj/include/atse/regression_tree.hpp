#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "atse/featurization.hpp"

namespace atse {

struct TreeParams {
    // max_depth 0 means unbounded (root alone is depth 0).
    std::size_t max_depth = 0;
    std::size_t min_samples_leaf = 1;
    double min_impurity_decrease = 0.0;
};

// CART regression tree: greedy binary splits minimizing squared error, mean
// leaves. Routing rule is feature <= threshold -> left. Equal-reduction ties
// break to the lower feature index, then the lower threshold.
class FittedTree {
public:
    struct Node {
        int feature = -1;  // -1 marks a leaf
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        double value = 0.0;      // leaf mean
        std::size_t count = 0;   // training samples routed here
        bool is_leaf() const { return feature < 0; }
    };

    explicit FittedTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
        for (const Node& n : nodes_)
            if (!n.is_leaf() && n.feature > max_feature_) max_feature_ = n.feature;
    }

    double predict(const FeatureVector& x) const;
    std::size_t n_nodes() const { return nodes_.size(); }
    std::size_t n_leaves() const;
    const std::vector<Node>& nodes() const { return nodes_; }

    // Indented debug rendering; not a stability contract.
    std::string dump() const;

private:
    std::vector<Node> nodes_;
    int max_feature_ = -1;
};

// Grows a tree on (X, y) considering only the distinct feature indices in
// `features` at every node. A feature multiset drawn with replacement is
// accepted as-is; duplicates are inert under exhaustive split search.
FittedTree fit_tree(const std::vector<FeatureVector>& X, const std::vector<double>& y,
                    const std::vector<std::size_t>& features, const TreeParams& params);

}  // namespace atse
