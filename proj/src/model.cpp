#include "sieve/model.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sieve/errors.hpp"

namespace sieve {

using json = nlohmann::ordered_json;

std::string to_string(ModelKind kind) {
    return kind == ModelKind::kLinear ? "lr" : "rf";
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "lr" || name == "linear" || name == "logistic") return ModelKind::kLinear;
    if (name == "rf" || name == "forest") return ModelKind::kForest;
    throw InvalidSpec("unknown model kind: " + name);
}

std::string ModelSpec::describe() const {
    std::ostringstream out;
    if (kind == ModelKind::kLinear) {
        out << "lr(C=" << linear.C << ")";
    } else {
        out << "rf(depth=";
        if (forest.max_depth) {
            out << *forest.max_depth;
        } else {
            out << "none";
        }
        out << ",leaf=" << forest.min_samples_leaf << ",trees=" << forest.n_estimators << ")";
    }
    return out.str();
}

namespace {

Matrix project_columns(const Matrix& X, const std::vector<std::size_t>& cols) {
    if (cols.empty()) return X;
    return X.select_columns(cols);
}

}  // namespace

TrainedModel fit_model(const ModelSpec& spec, const Matrix& X, std::span<const int> y,
                       std::vector<std::size_t> feature_subset) {
    for (std::size_t c : feature_subset) {
        if (c >= X.cols()) throw DimensionMismatch("feature subset index out of range");
    }
    Matrix Xs = project_columns(X, feature_subset);
    TrainedModel model;
    model.kind = spec.kind;
    model.feature_indices = std::move(feature_subset);
    model.input_dim = Xs.cols();
    if (spec.kind == ModelKind::kLinear) {
        model.linear = fit_logistic_lasso(Xs, y, spec.linear);
    } else {
        model.forest = fit_random_forest(Xs, y, spec.forest);
    }
    return model;
}

std::vector<double> predict_proba(const TrainedModel& model, const Matrix& X) {
    const Matrix* input = &X;
    Matrix projected;
    if (!model.feature_indices.empty() && X.cols() != model.input_dim) {
        projected = X.select_columns(model.feature_indices);
        input = &projected;
    }
    if (input->cols() != model.input_dim) {
        throw DimensionMismatch("prediction input has width " + std::to_string(input->cols()) +
                                ", model expects " + std::to_string(model.input_dim));
    }
    std::vector<double> scores(input->rows());
    for (std::size_t i = 0; i < input->rows(); ++i) {
        auto row = input->row(i);
        scores[i] = model.kind == ModelKind::kLinear ? linear_predict_one(model.linear, row)
                                                     : forest_predict_one(model.forest, row);
    }
    return scores;
}

namespace {

// Each tree is a flat node array; entries are [feature, threshold, left,
// right, p1]. JSON doubles round-trip exactly, so a reloaded model predicts
// bit-identically.
json tree_to_json(const DecisionTree& tree) {
    json nodes = json::array();
    for (const TreeNode& node : tree.nodes) {
        nodes.push_back(json::array({node.feature, node.threshold, node.left, node.right, node.p1}));
    }
    return nodes;
}

DecisionTree tree_from_json(const json& j) {
    DecisionTree tree;
    for (const json& entry : j) {
        TreeNode node;
        node.feature = entry.at(0).get<std::int32_t>();
        node.threshold = entry.at(1).get<double>();
        node.left = entry.at(2).get<std::int32_t>();
        node.right = entry.at(3).get<std::int32_t>();
        node.p1 = entry.at(4).get<double>();
        tree.nodes.push_back(node);
    }
    return tree;
}

}  // namespace

std::string model_to_json(const TrainedModel& model) {
    json j;
    j["kind"] = to_string(model.kind);
    j["input_dim"] = model.input_dim;
    j["feature_indices"] = model.feature_indices;
    if (model.kind == ModelKind::kLinear) {
        json lin;
        lin["C"] = model.linear.config.C;
        lin["intercept"] = model.linear.intercept;
        lin["weights"] = model.linear.weights;
        lin["means"] = model.linear.standardization.means;
        lin["stds"] = model.linear.standardization.stds;
        lin["converged"] = model.linear.converged;
        j["linear"] = std::move(lin);
    } else {
        json forest;
        forest["n_estimators"] = model.forest.config.n_estimators;
        forest["min_samples_leaf"] = model.forest.config.min_samples_leaf;
        forest["features_per_split"] = model.forest.config.features_per_split;
        forest["seed"] = model.forest.config.seed;
        if (model.forest.config.max_depth) {
            forest["max_depth"] = *model.forest.config.max_depth;
        } else {
            forest["max_depth"] = nullptr;
        }
        json trees = json::array();
        for (const auto& tree : model.forest.trees) {
            trees.push_back(tree_to_json(tree));
        }
        forest["trees"] = std::move(trees);
        j["forest"] = std::move(forest);
    }
    return j.dump();
}

TrainedModel model_from_json(const std::string& text) {
    json j = json::parse(text);
    TrainedModel model;
    model.kind = model_kind_from_string(j.at("kind").get<std::string>());
    model.input_dim = j.at("input_dim").get<std::size_t>();
    model.feature_indices = j.at("feature_indices").get<std::vector<std::size_t>>();
    if (model.kind == ModelKind::kLinear) {
        const json& lin = j.at("linear");
        model.linear.config.C = lin.at("C").get<double>();
        model.linear.intercept = lin.at("intercept").get<double>();
        model.linear.weights = lin.at("weights").get<std::vector<double>>();
        model.linear.standardization.means = lin.at("means").get<std::vector<double>>();
        model.linear.standardization.stds = lin.at("stds").get<std::vector<double>>();
        model.linear.converged = lin.at("converged").get<bool>();
    } else {
        const json& forest = j.at("forest");
        model.forest.config.n_estimators = forest.at("n_estimators").get<std::size_t>();
        model.forest.config.min_samples_leaf = forest.at("min_samples_leaf").get<std::size_t>();
        model.forest.config.features_per_split = forest.at("features_per_split").get<std::size_t>();
        model.forest.config.seed = forest.at("seed").get<std::uint64_t>();
        if (!forest.at("max_depth").is_null()) {
            model.forest.config.max_depth = forest.at("max_depth").get<std::size_t>();
        }
        for (const json& t : forest.at("trees")) {
            model.forest.trees.push_back(tree_from_json(t));
        }
    }
    return model;
}

void save_model(const TrainedModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open " + path + " for writing");
    out << model_to_json(model) << '\n';
    if (!out) throw IoFailure("write failed: " + path);
}

TrainedModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return model_from_json(buffer.str());
}

ModelGrid default_grid(ModelKind kind, std::uint64_t seed) {
    ModelGrid grid;
    if (kind == ModelKind::kLinear) {
        for (double C : {0.001, 0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
            ModelSpec spec;
            spec.kind = ModelKind::kLinear;
            spec.linear.C = C;
            grid.points.push_back(spec);
        }
    } else {
        const std::optional<std::size_t> depths[] = {std::nullopt, 10, 20};
        for (const auto& depth : depths) {
            for (std::size_t leaf : {std::size_t{1}, std::size_t{5}}) {
                ModelSpec spec;
                spec.kind = ModelKind::kForest;
                spec.forest.max_depth = depth;
                spec.forest.min_samples_leaf = leaf;
                spec.forest.seed = seed;
                grid.points.push_back(spec);
            }
        }
    }
    return grid;
}

ModelGrid grid_from_json_text(const std::string& text, std::uint64_t seed) {
    ModelGrid grid;
    try {
        json j = json::parse(text);
        ModelKind kind = model_kind_from_string(j.at("model").get<std::string>());
        if (kind == ModelKind::kLinear) {
            for (double C : j.at("C").get<std::vector<double>>()) {
                ModelSpec spec;
                spec.kind = ModelKind::kLinear;
                spec.linear.C = C;
                grid.points.push_back(spec);
            }
        } else {
            auto depths = j.value("max_depth", std::vector<std::size_t>{0});
            auto leaves = j.value("min_samples_leaf", std::vector<std::size_t>{1});
            auto trees = j.value("n_estimators", std::size_t{100});
            for (std::size_t depth : depths) {
                for (std::size_t leaf : leaves) {
                    ModelSpec spec;
                    spec.kind = ModelKind::kForest;
                    if (depth > 0) spec.forest.max_depth = depth;
                    spec.forest.min_samples_leaf = leaf;
                    spec.forest.n_estimators = trees;
                    spec.forest.seed = seed;
                    grid.points.push_back(spec);
                }
            }
        }
    } catch (const json::exception& e) {
        throw Error(std::string("bad grid file: ") + e.what());
    }
    if (grid.points.empty()) throw EmptyGrid("grid file produced no candidates");
    return grid;
}

}  // namespace sieve
