#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "sieve/errors.hpp"
#include "sieve/forest.hpp"

using namespace sieve;

namespace {

// Four XOR cells replicated `copies` times. No axis-aligned root split has
// positive Gini gain, so solving it requires accepting zero-gain splits.
void xor_data(std::size_t copies, Matrix& X, std::vector<int>& y) {
    const double cells[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    const int labels[4] = {0, 1, 1, 0};
    X = Matrix(4 * copies, 2);
    y.assign(4 * copies, 0);
    for (std::size_t r = 0; r < 4 * copies; ++r) {
        X(r, 0) = cells[r % 4][0];
        X(r, 1) = cells[r % 4][1];
        y[r] = labels[r % 4];
    }
}

bool same_tree(const DecisionTree& a, const DecisionTree& b) {
    if (a.nodes.size() != b.nodes.size()) return false;
    for (std::size_t i = 0; i < a.nodes.size(); ++i) {
        const TreeNode& x = a.nodes[i];
        const TreeNode& y = b.nodes[i];
        if (x.feature != y.feature || x.threshold != y.threshold || x.left != y.left ||
            x.right != y.right || x.p1 != y.p1)
            return false;
    }
    return true;
}

ForestConfig all_features_config() {
    ForestConfig cfg;
    cfg.features_per_split = 99;  // clamped to the column count
    return cfg;
}

}  // namespace

TEST_CASE("gini impurity on the three anchored count vectors") {
    CHECK(gini_impurity(std::vector<std::int64_t>{5, 5}) == 0.5);
    CHECK(gini_impurity(std::vector<std::int64_t>{10, 0}) == 0.0);
    CHECK(gini_impurity(std::vector<std::int64_t>{3, 1}) == 0.375);
    CHECK_THROWS_AS(gini_impurity(std::vector<std::int64_t>{0, 0}), EmptyNode);
    CHECK_THROWS_AS(gini_impurity(std::vector<std::int64_t>{-1, 2}), Error);
}

TEST_CASE("a single tree solves xor by accepting zero-gain splits") {
    Matrix X;
    std::vector<int> y;
    xor_data(1, X, y);

    RngStream rng(1);
    DecisionTree tree = fit_tree(X, y, all_features_config(), rng);
    CHECK(tree.nodes[0].feature >= 0);  // the root did split despite zero gain
    for (std::size_t r = 0; r < X.rows(); ++r) {
        CHECK(tree.predict_one(X.row(r)) == static_cast<double>(y[r]));
    }
}

TEST_CASE("forest reaches perfect xor accuracy") {
    Matrix X;
    std::vector<int> y;
    xor_data(10, X, y);

    ForestConfig cfg = all_features_config();
    cfg.n_estimators = 100;
    RandomForest forest = fit_random_forest(X, y, cfg);
    REQUIRE(forest.trees.size() == 100);

    std::size_t correct = 0;
    const std::vector<double> scores = forest_predict(forest, X);
    for (std::size_t r = 0; r < X.rows(); ++r) {
        correct += ((scores[r] >= 0.5 ? 1 : 0) == y[r]);
    }
    CHECK(correct == X.rows());
}

TEST_CASE("trains exactly the configured number of estimators") {
    Matrix X;
    std::vector<int> y;
    xor_data(3, X, y);
    for (std::size_t n_estimators : {1u, 7u, 100u}) {
        ForestConfig cfg = all_features_config();
        cfg.n_estimators = n_estimators;
        CHECK(fit_random_forest(X, y, cfg).trees.size() == n_estimators);
    }
}

TEST_CASE("fixed seed gives identical forests across worker counts") {
    // Non-trivial data so trees differ between bootstraps.
    RngStream data_rng(5);
    Matrix X(60, 5);
    std::vector<int> y(60);
    for (std::size_t r = 0; r < 60; ++r) {
        y[r] = static_cast<int>(r % 2);
        for (std::size_t c = 0; c < 5; ++c)
            X(r, c) = data_rng.normal() + (c == 2 ? 0.8 * y[r] : 0.0);
    }

    ForestConfig base;
    base.n_estimators = 24;
    base.features_per_split = 2;
    base.seed = 42;

    base.workers = 1;
    RandomForest serial = fit_random_forest(X, y, base);
    for (unsigned workers : {2u, 8u}) {
        ForestConfig cfg = base;
        cfg.workers = workers;
        RandomForest parallel = fit_random_forest(X, y, cfg);
        REQUIRE(parallel.trees.size() == serial.trees.size());
        for (std::size_t t = 0; t < serial.trees.size(); ++t) {
            CHECK(same_tree(serial.trees[t], parallel.trees[t]));
        }
    }

    // And the same seed twice is bit-identical outright.
    RandomForest again = fit_random_forest(X, y, base);
    for (std::size_t t = 0; t < serial.trees.size(); ++t) {
        CHECK(same_tree(serial.trees[t], again.trees[t]));
    }
}

TEST_CASE("max_depth zero collapses to a single leaf at the base rate") {
    Matrix X;
    std::vector<int> y;
    xor_data(2, X, y);
    ForestConfig cfg = all_features_config();
    cfg.max_depth = 0;
    RngStream rng(3);
    DecisionTree tree = fit_tree(X, y, cfg, rng);
    REQUIRE(tree.nodes.size() == 1);
    CHECK(tree.nodes[0].feature == -1);
    CHECK(tree.nodes[0].p1 == 0.5);
}

TEST_CASE("max_depth one allows at most a single split") {
    Matrix X;
    std::vector<int> y;
    xor_data(2, X, y);
    ForestConfig cfg = all_features_config();
    cfg.max_depth = 1;
    RngStream rng(3);
    DecisionTree tree = fit_tree(X, y, cfg, rng);
    CHECK(tree.nodes.size() <= 3);
    for (const TreeNode& node : tree.nodes) {
        if (node.feature >= 0) {
            CHECK(tree.nodes[static_cast<std::size_t>(node.left)].feature == -1);
            CHECK(tree.nodes[static_cast<std::size_t>(node.right)].feature == -1);
        }
    }
}

TEST_CASE("min_samples_leaf blocks splits that would starve a side") {
    Matrix X(6, 1);
    std::vector<int> y{0, 0, 0, 1, 1, 1};
    for (std::size_t r = 0; r < 6; ++r) X(r, 0) = static_cast<double>(r);

    // Leaf floor above half the node size: no legal split remains.
    ForestConfig cfg = all_features_config();
    cfg.min_samples_leaf = 4;
    RngStream rng(1);
    DecisionTree stump = fit_tree(X, y, cfg, rng);
    REQUIRE(stump.nodes.size() == 1);
    CHECK(stump.nodes[0].p1 == 0.5);

    // Floor of 3 still allows the midpoint split.
    cfg.min_samples_leaf = 3;
    RngStream rng2(1);
    DecisionTree tree = fit_tree(X, y, cfg, rng2);
    CHECK(tree.nodes.size() == 3);
    CHECK(tree.nodes[0].threshold == 2.5);
}

TEST_CASE("split ties break toward the lowest feature then lowest threshold") {
    // Columns 1 and 0 are identical, so their best splits tie exactly.
    Matrix X(4, 2);
    std::vector<int> y{0, 0, 1, 1};
    for (std::size_t r = 0; r < 4; ++r) {
        X(r, 0) = static_cast<double>(r);
        X(r, 1) = static_cast<double>(r);
    }
    RngStream rng(1);
    DecisionTree tree = fit_tree(X, y, all_features_config(), rng);
    CHECK(tree.nodes[0].feature == 0);
    CHECK(tree.nodes[0].threshold == 1.5);
}

TEST_CASE("thresholds are midpoints of consecutive distinct values") {
    Matrix X(4, 1);
    std::vector<int> y{0, 0, 1, 1};
    X(0, 0) = 1.0;
    X(1, 0) = 1.0;
    X(2, 0) = 4.0;
    X(3, 0) = 4.0;
    RngStream rng(1);
    DecisionTree tree = fit_tree(X, y, all_features_config(), rng);
    CHECK(tree.nodes[0].feature == 0);
    CHECK(tree.nodes[0].threshold == 2.5);  // (1 + 4) / 2, never between equals
}

TEST_CASE("forest rejects single-class labels and zero estimators") {
    Matrix X;
    std::vector<int> y;
    xor_data(1, X, y);
    CHECK_THROWS_AS(fit_random_forest(X, std::vector<int>(4, 1), all_features_config()),
                    SingleClassInput);
    ForestConfig cfg = all_features_config();
    cfg.n_estimators = 0;
    CHECK_THROWS_AS(fit_random_forest(X, y, cfg), Error);
}
