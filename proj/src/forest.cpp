#include "sieve/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sieve/errors.hpp"
#include "sieve/parallel.hpp"

namespace sieve {

double gini_impurity(std::span<const std::int64_t> class_counts) {
    std::int64_t total = 0;
    for (std::int64_t c : class_counts) {
        if (c < 0) throw Error("gini_impurity: negative count");
        total += c;
    }
    if (total == 0) throw EmptyNode("gini_impurity: empty node");
    double sum_sq = 0.0;
    for (std::int64_t c : class_counts) {
        const double frac = static_cast<double>(c) / static_cast<double>(total);
        sum_sq += frac * frac;
    }
    return 1.0 - sum_sq;
}

double DecisionTree::predict_one(std::span<const double> x) const {
    std::int32_t node = 0;
    for (;;) {
        const TreeNode& t = nodes[static_cast<std::size_t>(node)];
        if (t.feature < 0) return t.p1;
        node = x[static_cast<std::size_t>(t.feature)] < t.threshold ? t.left : t.right;
    }
}

namespace {

struct SplitChoice {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double weighted_impurity = 0.0;
};

class TreeBuilder {
public:
    TreeBuilder(const Matrix& X, std::span<const int> y, const ForestConfig& config,
                RngStream& rng)
        : X_(X), y_(y), config_(config), rng_(rng) {
        m_ = std::min<std::size_t>(std::max<std::size_t>(1, config.features_per_split), X.cols());
    }

    DecisionTree build(std::vector<std::size_t> indices) {
        tree_.nodes.clear();
        grow(std::move(indices), 0);
        return std::move(tree_);
    }

private:
    std::int32_t make_leaf(const std::vector<std::size_t>& indices) {
        std::size_t ones = 0;
        for (std::size_t i : indices) ones += (y_[i] == 1);
        TreeNode node;
        node.p1 = static_cast<double>(ones) / static_cast<double>(indices.size());
        tree_.nodes.push_back(node);
        return static_cast<std::int32_t>(tree_.nodes.size() - 1);
    }

    std::vector<std::size_t> sample_features() {
        const std::size_t d = X_.cols();
        if (m_ >= d) {
            std::vector<std::size_t> all(d);
            std::iota(all.begin(), all.end(), std::size_t{0});
            return all;  // no rng consumed
        }
        // Partial Fisher-Yates over a scratch identity permutation.
        std::vector<std::size_t> pool(d);
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t k = 0; k < m_; ++k) {
            const std::size_t pick = k + static_cast<std::size_t>(rng_.next_below(d - k));
            std::swap(pool[k], pool[pick]);
        }
        pool.resize(m_);
        return pool;
    }

    SplitChoice best_split(const std::vector<std::size_t>& indices,
                           const std::vector<std::size_t>& features) {
        const std::size_t n = indices.size();
        SplitChoice best;
        std::vector<std::pair<double, int>> sorted(n);
        for (std::size_t f : features) {
            for (std::size_t i = 0; i < n; ++i)
                sorted[i] = {X_(indices[i], f), y_[indices[i]]};
            std::sort(sorted.begin(), sorted.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            std::int64_t total1 = 0;
            for (const auto& [v, label] : sorted) total1 += (label == 1);
            const std::int64_t total = static_cast<std::int64_t>(n);

            std::int64_t left_n = 0, left1 = 0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                ++left_n;
                left1 += (sorted[i].second == 1);
                if (sorted[i].first == sorted[i + 1].first) continue;
                const std::int64_t right_n = total - left_n;
                if (left_n < static_cast<std::int64_t>(config_.min_samples_leaf) ||
                    right_n < static_cast<std::int64_t>(config_.min_samples_leaf))
                    continue;
                const double threshold = sorted[i].first + (sorted[i + 1].first - sorted[i].first) / 2.0;
                const std::int64_t left0 = left_n - left1;
                const std::int64_t right1 = total1 - left1;
                const std::int64_t right0 = right_n - right1;
                const std::int64_t lc[2] = {left0, left1};
                const std::int64_t rc[2] = {right0, right1};
                const double weighted =
                    (static_cast<double>(left_n) * gini_impurity(lc) +
                     static_cast<double>(right_n) * gini_impurity(rc)) /
                    static_cast<double>(total);
                const bool better =
                    !best.found || weighted < best.weighted_impurity ||
                    (weighted == best.weighted_impurity &&
                     (f < best.feature || (f == best.feature && threshold < best.threshold)));
                if (better) {
                    best.found = true;
                    best.feature = f;
                    best.threshold = threshold;
                    best.weighted_impurity = weighted;
                }
            }
        }
        return best;
    }

    std::int32_t grow(std::vector<std::size_t> indices, std::size_t depth) {
        std::size_t ones = 0;
        for (std::size_t i : indices) ones += (y_[i] == 1);
        const bool pure = (ones == 0 || ones == indices.size());
        const bool depth_capped = config_.max_depth && depth >= *config_.max_depth;
        if (pure || depth_capped || indices.size() < 2 * config_.min_samples_leaf)
            return make_leaf(indices);

        const std::vector<std::size_t> features = sample_features();
        const SplitChoice split = best_split(indices, features);
        if (!split.found) return make_leaf(indices);

        std::vector<std::size_t> left_idx, right_idx;
        left_idx.reserve(indices.size());
        right_idx.reserve(indices.size());
        for (std::size_t i : indices) {
            if (X_(i, split.feature) < split.threshold) left_idx.push_back(i);
            else right_idx.push_back(i);
        }
        indices.clear();
        indices.shrink_to_fit();

        TreeNode node;
        node.feature = static_cast<std::int32_t>(split.feature);
        node.threshold = split.threshold;
        tree_.nodes.push_back(node);
        const std::int32_t self = static_cast<std::int32_t>(tree_.nodes.size() - 1);
        const std::int32_t left = grow(std::move(left_idx), depth + 1);
        const std::int32_t right = grow(std::move(right_idx), depth + 1);
        tree_.nodes[static_cast<std::size_t>(self)].left = left;
        tree_.nodes[static_cast<std::size_t>(self)].right = right;
        return self;
    }

    const Matrix& X_;
    std::span<const int> y_;
    const ForestConfig& config_;
    RngStream& rng_;
    std::size_t m_ = 1;
    DecisionTree tree_;
};

}  // namespace

DecisionTree fit_tree(const Matrix& X, std::span<const int> y, const ForestConfig& config,
                      RngStream& rng) {
    if (X.rows() != y.size()) throw DimensionMismatch("fit_tree: rows(X) != len(y)");
    if (X.rows() == 0) throw DimensionMismatch("fit_tree: empty input");
    std::vector<std::size_t> indices(X.rows());
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    TreeBuilder builder(X, y, config, rng);
    return builder.build(std::move(indices));
}

RandomForest fit_random_forest(const Matrix& X, std::span<const int> y,
                               const ForestConfig& config) {
    const std::size_t n = X.rows();
    if (n != y.size()) throw DimensionMismatch("fit_random_forest: rows(X) != len(y)");
    std::size_t n_pos = 0;
    for (int v : y) n_pos += (v == 1);
    if (n == 0 || n_pos == 0 || n_pos == n)
        throw SingleClassInput("fit_random_forest requires both classes");
    if (config.n_estimators == 0) throw Error("ForestConfig.n_estimators must be >= 1");

    RandomForest forest;
    forest.config = config;
    forest.trees.resize(config.n_estimators);
    parallel_for(config.n_estimators, config.workers, [&](std::size_t t) {
        RngStream rng(config.seed, t);
        Matrix Xb(n, X.cols());
        std::vector<int> yb(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t pick = static_cast<std::size_t>(rng.next_below(n));
            for (std::size_t c = 0; c < X.cols(); ++c) Xb(i, c) = X(pick, c);
            yb[i] = y[pick];
        }
        forest.trees[t] = fit_tree(Xb, yb, config, rng);
    });
    return forest;
}

double forest_predict_one(const RandomForest& forest, std::span<const double> x) {
    double sum = 0.0;
    for (const DecisionTree& tree : forest.trees) sum += tree.predict_one(x);
    return sum / static_cast<double>(forest.trees.size());
}

std::vector<double> forest_predict(const RandomForest& forest, const Matrix& X) {
    std::vector<double> out(X.rows());
    for (std::size_t i = 0; i < X.rows(); ++i) out[i] = forest_predict_one(forest, X.row(i));
    return out;
}

}  // namespace sieve
