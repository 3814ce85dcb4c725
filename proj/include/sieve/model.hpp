#pragma once

#include <span>
#include <string>
#include <vector>

#include "sieve/forest.hpp"
#include "sieve/linear.hpp"
#include "sieve/matrix.hpp"

namespace sieve {

enum class ModelKind { kLinear, kForest };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

/// Hyperparameters requested for a fit; one grid point.
struct ModelSpec {
    ModelKind kind = ModelKind::kForest;
    LinearModelConfig linear;
    ForestConfig forest;

    /// Short human-readable parameter description for reports.
    std::string describe() const;
};

/// A fitted model plus the feature subset that produced it. When
/// `feature_indices` is nonempty the model was trained on those catalog
/// columns and prediction on full-width matrices projects them out first.
struct TrainedModel {
    ModelKind kind = ModelKind::kForest;
    LinearModel linear;
    RandomForest forest;
    std::vector<std::size_t> feature_indices;
    std::size_t input_dim = 0;
};

/// Fits spec on X (optionally restricted to `feature_subset` columns).
TrainedModel fit_model(const ModelSpec& spec, const Matrix& X, std::span<const int> y,
                       std::vector<std::size_t> feature_subset = {});

/// Scores in [0, 1]. X may have either the model's input width or the full
/// catalog width when a feature subset is stored. Class prediction is
/// score >= 0.5. Throws DimensionMismatch.
std::vector<double> predict_proba(const TrainedModel& model, const Matrix& X);

/// JSON round-trip; prediction-exact.
std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(const std::string& text);
void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

/// Hyperparameter grid; evaluation order is declaration order.
struct ModelGrid {
    std::vector<ModelSpec> points;
};

/// lr: C in {0.001, 0.01, 0.1, 1, 10, 100, 1000}.
/// rf: max_depth in {unlimited, 10, 20} x min_samples_leaf in {1, 5},
///     100 estimators.
ModelGrid default_grid(ModelKind kind, std::uint64_t seed);

/// Parses a grid file: {"model": "lr", "C": [...]} or {"model": "rf",
/// "max_depth": [0, ...] (0 = unlimited), "min_samples_leaf": [...],
/// "n_estimators": N}. Throws EmptyGrid / Error on bad input.
ModelGrid grid_from_json_text(const std::string& text, std::uint64_t seed);

}  // namespace sieve
