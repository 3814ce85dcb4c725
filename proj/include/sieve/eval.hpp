#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sieve/corpus.hpp"
#include "sieve/metrics.hpp"
#include "sieve/model.hpp"
#include "sieve/tasks.hpp"

namespace sieve {

struct EvalConfig {
    std::size_t k = 5;           // fold count
    std::uint64_t seed = 42;
    double epsilon = 0.002;      // greedy: minimum AUC improvement
    std::size_t cap = 11;        // greedy: max selected features
    unsigned workers = 1;
};

/// Deterministic stratified fold assignment, independent of input order.
///
/// Recipe (frozen): sort instance indices by key; shuffle each class's
/// members with a seeded stream (class 1 uses stream index 1, class 0
/// stream index 0); deal class 1 then class 0, each member to the fold
/// with the smallest current size, ties to the lowest fold index.
/// Returns fold id per instance. Requires at least k members per class.
std::vector<std::size_t> stratified_fold_assignment(const std::vector<std::string>& keys,
                                                    std::span<const int> y, std::size_t k,
                                                    std::uint64_t seed);

struct CvResult {
    MetricsReport mean;                 // metric means over folds, counts summed
    std::vector<MetricsReport> folds;
    std::vector<std::size_t> fold_of;
    std::vector<double> oof_scores;     // out-of-fold scores, fold order
    std::vector<int> oof_labels;
};

/// Stratified k-fold cross-validation of one hyperparameter point.
/// `feature_subset` nonempty restricts training to those catalog columns.
/// Forest randomness is re-derived per fold from (spec seed, fold).
/// Throws TooFewInstances when either class has fewer than k members.
CvResult kfold_cv(const Dataset& data, const ModelSpec& spec, const EvalConfig& config,
                  std::vector<std::size_t> feature_subset = {});

/// Same, with a precomputed fold assignment (greedy reuses one assignment
/// across all candidate evaluations).
CvResult kfold_cv_with_folds(const Dataset& data, const ModelSpec& spec,
                             const EvalConfig& config, std::vector<std::size_t> feature_subset,
                             const std::vector<std::size_t>& fold_of);

struct GridSearchResult {
    std::size_t best_index = 0;
    ModelSpec best;
    CvResult best_cv;
    std::vector<double> mean_auc;  // one per grid point, grid order
};

/// Evaluates every grid point with kfold_cv; max mean AUC wins, ties go to
/// the earlier grid position. Throws EmptyGrid.
GridSearchResult grid_search(const Dataset& data, const ModelGrid& grid,
                             const EvalConfig& config);

struct SelectionState {
    std::vector<std::size_t> selected;  // selection order = rank
    std::vector<double> auc_trace;      // CV AUC after each accepted feature
};

/// Greedy forward selection: each round evaluates every unselected feature
/// joined to the current set with the same fold assignment, accepts the
/// argmax (ties to the lowest feature index), and stops once the
/// improvement drops below epsilon or the cap is reached. The first round
/// always accepts.
SelectionState greedy_forward_selection(const Dataset& data, const ModelSpec& spec,
                                        const EvalConfig& config);

struct TemporalScenario {
    std::string name;
    std::int64_t train_start = 0;
    std::int64_t train_end = 0;   // == test_start in the default plan
    std::int64_t test_start = 0;
    std::int64_t test_end = 0;
};

struct TemporalPlan {
    std::vector<TemporalScenario> scenarios;
};

/// Cumulative monthly plan over the corpus window: scenario i trains on
/// months [1..i] and tests on the remaining months. A corpus spanning M
/// months yields M-1 scenarios. Throws InvalidWindow if M < 2.
TemporalPlan default_temporal_plan(const Corpus& corpus);

enum class TemporalPhase { kTrainBegin, kTrainEnd, kTestEnd };

struct TemporalOptions {
    bool run_selection = false;
    /// When true, test-time features are extracted over the combined
    /// train+test span (labels stay test-window-only). Default keeps test
    /// features strictly inside the test window.
    bool test_features_include_history = false;
    ExtractOptions extract;
    /// Observer for temporal-hygiene instrumentation; called with the
    /// scenario index at each phase boundary.
    std::function<void(std::size_t, TemporalPhase)> phase_hook;
};

struct ScenarioResult {
    TemporalScenario scenario;
    ModelSpec chosen;          // winner of the per-scenario grid search
    double train_cv_auc = 0.0;
    MetricsReport test;
    std::vector<double> test_scores;  // instance order of the test dataset
    std::vector<int> test_labels;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    SelectionState selection;  // filled when run_selection is set
};

struct TemporalResult {
    Task task = Task::kT1;
    std::vector<ScenarioResult> scenarios;
};

/// Simulated real-time evaluation: per scenario, grid-search and fit on the
/// training slice only, then score the test slice. Throws EmptySlice when a
/// slice lacks a class, InvalidWindow for malformed scenarios.
TemporalResult temporal_evaluate(const Corpus& corpus, Task task, const ModelGrid& grid,
                                 const TemporalPlan& plan, const EvalConfig& config,
                                 const TemporalOptions& options = {});

struct RankedFeature {
    std::size_t feature = 0;
    double score = 0.0;      // mean rank, lower is better
    std::size_t rank = 0;    // competition ranking, 1-based
    bool tied_with_previous = false;
};

/// Cross-task rank aggregation. per_task[t] holds one SelectionState per
/// scenario. A feature unselected in a scenario scores cap+1 there; a
/// feature selected nowhere at all is excluded. Output sorted by final
/// score; equal scores share a rank.
std::vector<RankedFeature> aggregate_feature_ranks(
    const std::vector<std::vector<SelectionState>>& per_task, std::size_t cap);

/// Seeded Fisher-Yates permutation of the labels (null-model control).
std::vector<int> shuffle_labels(std::span<const int> y, std::uint64_t seed);

}  // namespace sieve
