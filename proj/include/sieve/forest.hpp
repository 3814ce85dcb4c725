#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sieve/matrix.hpp"
#include "sieve/rng.hpp"

namespace sieve {

struct ForestConfig {
    std::size_t n_estimators = 100;
    std::optional<std::size_t> max_depth;  // nullopt = unlimited
    std::size_t min_samples_leaf = 1;
    std::size_t features_per_split = 7;  // clamped to the feature count at fit
    std::uint64_t seed = 42;
    unsigned workers = 1;
};

/// 1 - sum (n_i/n)^2. Throws EmptyNode when the total count is zero.
double gini_impurity(std::span<const std::int64_t> class_counts);

struct TreeNode {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    double p1 = 0.0;  // leaf class-1 probability
};

struct DecisionTree {
    std::vector<TreeNode> nodes;  // root at index 0

    double predict_one(std::span<const double> x) const;
};

/// Greedy CART with Gini splits. At each node `features_per_split` distinct
/// candidate features are sampled from the stream (none consumed when every
/// feature is a candidate); thresholds are midpoints of consecutive distinct
/// sorted values; ties break toward the lowest feature index, then the
/// lowest threshold. Zero-gain splits are accepted; growth stops on purity,
/// max_depth, min_samples_leaf, or when no valid split exists.
DecisionTree fit_tree(const Matrix& X, std::span<const int> y, const ForestConfig& config,
                      RngStream& rng);

struct RandomForest {
    ForestConfig config;
    std::vector<DecisionTree> trees;
};

/// n_estimators trees, each on a bootstrap sample drawn from an independent
/// stream derived from (seed, tree index). Identical results for any worker
/// count. Throws SingleClassInput.
RandomForest fit_random_forest(const Matrix& X, std::span<const int> y,
                               const ForestConfig& config);

/// Mean leaf class-1 probability across trees, accumulated in tree order.
double forest_predict_one(const RandomForest& forest, std::span<const double> x);
std::vector<double> forest_predict(const RandomForest& forest, const Matrix& X);

}  // namespace sieve
