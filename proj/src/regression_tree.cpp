#include "atse/regression_tree.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "atse/errors.hpp"

namespace atse {

double FittedTree::predict(const FeatureVector& x) const {
    if (max_feature_ >= 0 && static_cast<std::size_t>(max_feature_) >= x.size())
        throw ShapeError("predict: tree uses feature " + std::to_string(max_feature_) +
                         " but input has " + std::to_string(x.size()) + " values");
    int node = 0;
    while (!nodes_[node].is_leaf()) {
        const Node& n = nodes_[node];
        node = x[n.feature] <= n.threshold ? n.left : n.right;
    }
    return nodes_[node].value;
}

std::size_t FittedTree::n_leaves() const {
    std::size_t count = 0;
    for (const Node& n : nodes_)
        if (n.is_leaf()) ++count;
    return count;
}

std::string FittedTree::dump() const {
    std::ostringstream out;
    struct Frame {
        int node;
        int depth;
    };
    std::vector<Frame> stack{{0, 0}};
    while (!stack.empty()) {
        auto [node, depth] = stack.back();
        stack.pop_back();
        const Node& n = nodes_[node];
        for (int i = 0; i < depth; ++i) out << "  ";
        if (n.is_leaf()) {
            out << "leaf value=" << n.value << " n=" << n.count << '\n';
        } else {
            out << "feature " << n.feature << " <= " << n.threshold << '\n';
            stack.push_back({n.right, depth + 1});
            stack.push_back({n.left, depth + 1});
        }
    }
    return out.str();
}

namespace {

struct Split {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double children_sse = 0.0;
};

double sse_of(double sum, double sumsq, double n) {
    double s = sumsq - sum * sum / n;
    return s > 0.0 ? s : 0.0;
}

// Mean-then-deviations SSE of a node's targets. Slower than the sum/sumsq
// shortcut but its rounding depends only on the set of samples in iteration
// order, which keeps equal partitions numerically equal.
double direct_sse(const std::vector<double>& ys) {
    double mean = 0.0;
    for (double v : ys) mean += v;
    mean /= static_cast<double>(ys.size());
    double sse = 0.0;
    for (double v : ys) sse += (v - mean) * (v - mean);
    return sse;
}

// Combined child SSE of a candidate, recomputed from scratch with children
// gathered in the node's sample order.
double direct_children_sse(const std::vector<FeatureVector>& X, const std::vector<double>& y,
                           const std::vector<std::size_t>& samples, std::size_t f,
                           double threshold) {
    std::vector<double> left;
    std::vector<double> right;
    for (std::size_t s : samples) (X[s][f] <= threshold ? left : right).push_back(y[s]);
    return direct_sse(left) + direct_sse(right);
}

// Exhaustive search over (feature, midpoint) candidates minimizing the
// combined child SSE. A fast prefix-sum scan narrows the field; finalists
// within rounding noise of the minimum are rescored with order-independent
// arithmetic so that exact ties really compare equal, and the first strict
// minimum in ascending (feature, threshold) order wins. That realizes the
// documented tie rule: lowest feature index, then lowest threshold.
Split best_split(const std::vector<FeatureVector>& X, const std::vector<double>& y,
                 const std::vector<std::size_t>& samples,
                 const std::vector<std::size_t>& features, std::size_t min_samples_leaf) {
    std::size_t n = samples.size();
    std::vector<std::size_t> order(samples);
    std::vector<double> sorted_y(n);

    struct Candidate {
        std::size_t feature;
        double threshold;
        double approx_sse;
    };
    std::vector<Candidate> candidates;
    double approx_best = std::numeric_limits<double>::infinity();
    double scale = 0.0;

    for (std::size_t f : features) {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return X[a][f] < X[b][f];
        });
        for (std::size_t i = 0; i < n; ++i) sorted_y[i] = y[order[i]];

        double total_sum = 0.0;
        double total_sumsq = 0.0;
        for (double v : sorted_y) {
            total_sum += v;
            total_sumsq += v * v;
        }
        scale = std::max(scale, total_sumsq);

        double left_sum = 0.0;
        double left_sumsq = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            left_sum += sorted_y[i];
            left_sumsq += sorted_y[i] * sorted_y[i];
            double lo = X[order[i]][f];
            double hi = X[order[i + 1]][f];
            if (!(lo < hi)) continue;  // no boundary between equal values
            std::size_t n_left = i + 1;
            if (n_left < min_samples_leaf || n - n_left < min_samples_leaf) continue;
            double children = sse_of(left_sum, left_sumsq, static_cast<double>(n_left)) +
                              sse_of(total_sum - left_sum, total_sumsq - left_sumsq,
                                     static_cast<double>(n - n_left));
            candidates.push_back({f, (lo + hi) / 2.0, children});
            approx_best = std::min(approx_best, children);
        }
    }

    Split best;
    if (candidates.empty()) return best;
    double tol = 1e-9 * (scale + 1.0);
    double best_sse = std::numeric_limits<double>::infinity();
    for (const Candidate& c : candidates) {
        if (c.approx_sse > approx_best + tol) continue;
        double children = direct_children_sse(X, y, samples, c.feature, c.threshold);
        if (children < best_sse) {
            best_sse = children;
            best.found = true;
            best.feature = c.feature;
            best.threshold = c.threshold;
            best.children_sse = children;
        }
    }
    return best;
}

struct Builder {
    const std::vector<FeatureVector>& X;
    const std::vector<double>& y;
    std::vector<std::size_t> features;  // distinct, ascending
    const TreeParams& params;
    std::vector<FittedTree::Node> nodes;

    int build(std::vector<std::size_t> samples, std::size_t depth) {
        std::size_t n = samples.size();
        double sum = 0.0;
        for (std::size_t s : samples) sum += y[s];
        double mean = sum / static_cast<double>(n);
        // Same arithmetic as the candidate rescoring, so the accept/reject
        // decision agrees with an exhaustive check down to the last bit.
        double node_sse = 0.0;
        for (std::size_t s : samples) {
            double d = y[s] - mean;
            node_sse += d * d;
        }

        int idx = static_cast<int>(nodes.size());
        nodes.push_back({});
        nodes[idx].value = mean;
        nodes[idx].count = n;

        bool depth_capped = params.max_depth > 0 && depth >= params.max_depth;
        if (depth_capped || n < 2 * params.min_samples_leaf || node_sse <= 0.0 ||
            features.empty())
            return idx;

        Split split = best_split(X, y, samples, features, params.min_samples_leaf);
        if (!split.found || !(node_sse - split.children_sse > params.min_impurity_decrease))
            return idx;

        std::vector<std::size_t> left;
        std::vector<std::size_t> right;
        for (std::size_t s : samples) {
            if (X[s][split.feature] <= split.threshold)
                left.push_back(s);
            else
                right.push_back(s);
        }
        samples.clear();
        samples.shrink_to_fit();

        nodes[idx].feature = static_cast<int>(split.feature);
        nodes[idx].threshold = split.threshold;
        int l = build(std::move(left), depth + 1);
        nodes[idx].left = l;
        int r = build(std::move(right), depth + 1);
        nodes[idx].right = r;
        return idx;
    }
};

}  // namespace

FittedTree fit_tree(const std::vector<FeatureVector>& X, const std::vector<double>& y,
                    const std::vector<std::size_t>& features, const TreeParams& params) {
    if (X.empty() || X.size() != y.size())
        throw ParameterError("fit_tree: need a non-empty X with matching y");
    if (params.min_samples_leaf < 1)
        throw ParameterError("fit_tree: min_samples_leaf must be >= 1");
    if (params.min_impurity_decrease < 0.0)
        throw ParameterError("fit_tree: min_impurity_decrease must be >= 0");

    std::size_t width = X[0].size();
    for (const auto& row : X)
        if (row.size() != width) throw ShapeError("fit_tree: ragged feature matrix");

    std::vector<std::size_t> distinct(features);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t f : distinct)
        if (f >= width)
            throw ShapeError("fit_tree: feature index " + std::to_string(f) +
                             " out of range for width " + std::to_string(width));

    std::vector<std::size_t> samples(X.size());
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = i;

    Builder builder{X, y, std::move(distinct), params, {}};
    builder.build(std::move(samples), 0);
    return FittedTree(std::move(builder.nodes));
}

}  // namespace atse
