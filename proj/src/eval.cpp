#include "sieve/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sieve/errors.hpp"
#include "sieve/parallel.hpp"
#include "sieve/rng.hpp"

namespace sieve {

namespace {

void shuffle_indices(std::vector<std::size_t>& v, RngStream& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = rng.next_below(i);
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace

std::vector<std::size_t> stratified_fold_assignment(const std::vector<std::string>& keys,
                                                    std::span<const int> y, std::size_t k,
                                                    std::uint64_t seed) {
    const std::size_t n = y.size();
    if (k < 2) throw InvalidSpec("fold count must be at least 2");
    if (keys.size() != n) throw LengthMismatch("keys and labels differ in length");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (keys[a] != keys[b]) return keys[a] < keys[b];
        return a < b;
    });

    std::vector<std::size_t> members[2];
    for (std::size_t idx : order) {
        int label = y[idx];
        if (label != 0 && label != 1) throw InvalidSpec("labels must be 0 or 1");
        members[label].push_back(idx);
    }
    if (members[0].size() < k || members[1].size() < k) {
        throw TooFewInstances("need at least k members per class (have " +
                              std::to_string(members[1].size()) + " positive, " +
                              std::to_string(members[0].size()) + " negative, k=" +
                              std::to_string(k) + ")");
    }

    std::vector<std::size_t> fold_of(n, 0);
    std::vector<std::size_t> fold_size(k, 0);
    for (int label : {1, 0}) {
        RngStream rng(seed, static_cast<std::uint64_t>(label));
        auto& ms = members[label];
        shuffle_indices(ms, rng);
        for (std::size_t idx : ms) {
            std::size_t best = 0;
            for (std::size_t f = 1; f < k; ++f) {
                if (fold_size[f] < fold_size[best]) best = f;
            }
            fold_of[idx] = best;
            ++fold_size[best];
        }
    }
    return fold_of;
}

CvResult kfold_cv_with_folds(const Dataset& data, const ModelSpec& spec,
                             const EvalConfig& config, std::vector<std::size_t> feature_subset,
                             const std::vector<std::size_t>& fold_of) {
    const std::size_t n = data.X.rows();
    if (data.y.size() != n || fold_of.size() != n) {
        throw LengthMismatch("dataset rows, labels, and fold assignment must agree");
    }
    CvResult result;
    result.fold_of = fold_of;
    result.folds.reserve(config.k);
    for (std::size_t f = 0; f < config.k; ++f) {
        std::vector<std::size_t> train_rows;
        std::vector<std::size_t> test_rows;
        for (std::size_t i = 0; i < n; ++i) {
            (fold_of[i] == f ? test_rows : train_rows).push_back(i);
        }
        Matrix Xtr = data.X.select_rows(train_rows);
        Matrix Xte = data.X.select_rows(test_rows);
        std::vector<int> ytr;
        ytr.reserve(train_rows.size());
        for (std::size_t i : train_rows) ytr.push_back(data.y[i]);
        std::vector<int> yte;
        yte.reserve(test_rows.size());
        for (std::size_t i : test_rows) yte.push_back(data.y[i]);

        ModelSpec fold_spec = spec;
        if (fold_spec.kind == ModelKind::kForest) {
            // Re-derive bootstrap randomness per fold; keeps folds independent
            // while the whole CV stays a pure function of (spec seed, fold).
            fold_spec.forest.seed = derive_stream(spec.forest.seed, f);
            fold_spec.forest.workers = config.workers;
        }
        TrainedModel model = fit_model(fold_spec, Xtr, ytr, feature_subset);
        std::vector<double> scores = predict_proba(model, Xte);
        result.folds.push_back(evaluate_scores(yte, scores));
        result.oof_scores.insert(result.oof_scores.end(), scores.begin(), scores.end());
        result.oof_labels.insert(result.oof_labels.end(), yte.begin(), yte.end());
    }

    MetricsReport& mean = result.mean;
    for (const MetricsReport& fold : result.folds) {
        mean.tp += fold.tp;
        mean.fp += fold.fp;
        mean.tn += fold.tn;
        mean.fn += fold.fn;
        mean.n += fold.n;
        mean.precision += fold.precision;
        mean.recall += fold.recall;
        mean.f1 += fold.f1;
        mean.auc += fold.auc;
    }
    const double k = static_cast<double>(result.folds.size());
    mean.precision /= k;
    mean.recall /= k;
    mean.f1 /= k;
    mean.auc /= k;
    return result;
}

CvResult kfold_cv(const Dataset& data, const ModelSpec& spec, const EvalConfig& config,
                  std::vector<std::size_t> feature_subset) {
    auto fold_of = stratified_fold_assignment(data.user_ids, data.y, config.k, config.seed);
    return kfold_cv_with_folds(data, spec, config, std::move(feature_subset), fold_of);
}

GridSearchResult grid_search(const Dataset& data, const ModelGrid& grid,
                             const EvalConfig& config) {
    if (grid.points.empty()) throw EmptyGrid("hyperparameter grid is empty");
    GridSearchResult result;
    result.mean_auc.reserve(grid.points.size());
    bool have_best = false;
    for (std::size_t g = 0; g < grid.points.size(); ++g) {
        CvResult cv = kfold_cv(data, grid.points[g], config);
        result.mean_auc.push_back(cv.mean.auc);
        if (!have_best || cv.mean.auc > result.best_cv.mean.auc) {
            have_best = true;
            result.best_index = g;
            result.best = grid.points[g];
            result.best_cv = std::move(cv);
        }
    }
    return result;
}

SelectionState greedy_forward_selection(const Dataset& data, const ModelSpec& spec,
                                        const EvalConfig& config) {
    const std::size_t d = data.X.cols();
    if (d < 2) throw InvalidSpec("forward selection needs at least 2 features");
    auto fold_of = stratified_fold_assignment(data.user_ids, data.y, config.k, config.seed);

    // Candidate evaluations run in parallel; the model itself stays serial
    // to avoid nested thread pools.
    EvalConfig inner = config;
    inner.workers = 1;

    SelectionState state;
    double prev_auc = -std::numeric_limits<double>::infinity();
    while (state.selected.size() < std::min(config.cap, d)) {
        std::vector<std::size_t> candidates;
        for (std::size_t f = 0; f < d; ++f) {
            if (std::find(state.selected.begin(), state.selected.end(), f) ==
                state.selected.end()) {
                candidates.push_back(f);
            }
        }
        std::vector<double> auc(candidates.size(), 0.0);
        parallel_for(candidates.size(), config.workers, [&](std::size_t c) {
            std::vector<std::size_t> subset = state.selected;
            subset.push_back(candidates[c]);
            auc[c] = kfold_cv_with_folds(data, spec, inner, std::move(subset), fold_of).mean.auc;
        });
        std::size_t best = 0;
        for (std::size_t c = 1; c < candidates.size(); ++c) {
            if (auc[c] > auc[best]) best = c;  // ties keep the lower feature index
        }
        if (!state.selected.empty() && auc[best] - prev_auc < config.epsilon) break;
        state.selected.push_back(candidates[best]);
        state.auc_trace.push_back(auc[best]);
        prev_auc = auc[best];
    }
    return state;
}

TemporalPlan default_temporal_plan(const Corpus& corpus) {
    auto bounds = month_boundaries(corpus.window_start, corpus.window_end);
    const std::size_t months = bounds.size() - 1;
    if (months < 2) throw InvalidWindow("temporal evaluation needs a corpus spanning >= 2 months");
    TemporalPlan plan;
    for (std::size_t i = 1; i < months; ++i) {
        TemporalScenario s;
        s.name = i == 1 ? "M1" : "M1-M" + std::to_string(i);
        s.train_start = bounds.front();
        s.train_end = bounds[i];
        s.test_start = bounds[i];
        s.test_end = bounds.back();
        plan.scenarios.push_back(std::move(s));
    }
    return plan;
}

namespace {

void require_two_classes(const Dataset& data, const std::string& where) {
    std::size_t pos = 0;
    for (int label : data.y) pos += static_cast<std::size_t>(label == 1);
    if (data.y.empty() || pos == 0 || pos == data.y.size()) {
        throw EmptySlice(where + ": slice has no instances of one class");
    }
}

Dataset build_instances(const Corpus& label_slice, const Corpus& feature_slice, Task task,
                        const ExtractOptions& extract) {
    auto labels = task_labels(label_slice, task);
    auto features = extract_all(feature_slice, extract);
    std::vector<LabeledInstance> instances;
    instances.reserve(labels.size());
    for (const auto& [user_id, label] : labels) {
        auto it = features.find(user_id);
        if (it == features.end()) continue;
        LabeledInstance inst;
        inst.user_id = user_id;
        inst.window_id = it->second.window_id;
        inst.label = label;
        inst.features = it->second;
        instances.push_back(std::move(inst));
    }
    return to_dataset(instances);
}

}  // namespace

TemporalResult temporal_evaluate(const Corpus& corpus, Task task, const ModelGrid& grid,
                                 const TemporalPlan& plan, const EvalConfig& config,
                                 const TemporalOptions& options) {
    TemporalResult result;
    result.task = task;
    for (std::size_t i = 0; i < plan.scenarios.size(); ++i) {
        const TemporalScenario& s = plan.scenarios[i];
        if (s.train_start >= s.train_end || s.test_start >= s.test_end ||
            s.train_end > s.test_start) {
            throw InvalidWindow("scenario " + s.name + " has invalid bounds");
        }
        ScenarioResult sr;
        sr.scenario = s;

        Corpus train_slice = slice_by_time(corpus, s.train_start, s.train_end);
        if (options.phase_hook) options.phase_hook(i, TemporalPhase::kTrainBegin);
        Dataset train;
        try {
            train = build_instances(train_slice, train_slice, task, options.extract);
        } catch (const EmptyClass& e) {
            throw EmptySlice("scenario " + s.name + ": " + e.what());
        }
        require_two_classes(train, "scenario " + s.name + " (train)");
        sr.n_train = train.y.size();

        GridSearchResult gs = grid_search(train, grid, config);
        sr.chosen = gs.best;
        sr.train_cv_auc = gs.best_cv.mean.auc;
        if (options.run_selection) {
            sr.selection = greedy_forward_selection(train, gs.best, config);
        }
        ModelSpec final_spec = gs.best;
        if (final_spec.kind == ModelKind::kForest) final_spec.forest.workers = config.workers;
        TrainedModel model = fit_model(final_spec, train.X, train.y);
        if (options.phase_hook) options.phase_hook(i, TemporalPhase::kTrainEnd);

        Corpus test_slice = slice_by_time(corpus, s.test_start, s.test_end);
        Dataset test;
        try {
            if (options.test_features_include_history) {
                Corpus history = slice_by_time(corpus, s.train_start, s.test_end);
                test = build_instances(test_slice, history, task, options.extract);
            } else {
                test = build_instances(test_slice, test_slice, task, options.extract);
            }
        } catch (const EmptyClass& e) {
            throw EmptySlice("scenario " + s.name + ": " + e.what());
        }
        require_two_classes(test, "scenario " + s.name + " (test)");
        sr.n_test = test.y.size();

        std::vector<double> scores = predict_proba(model, test.X);
        sr.test = evaluate_scores(test.y, scores);
        sr.test_scores = std::move(scores);
        sr.test_labels = test.y;
        if (options.phase_hook) options.phase_hook(i, TemporalPhase::kTestEnd);
        result.scenarios.push_back(std::move(sr));
    }
    return result;
}

std::vector<RankedFeature> aggregate_feature_ranks(
    const std::vector<std::vector<SelectionState>>& per_task, std::size_t cap) {
    const double penalty = static_cast<double>(cap) + 1.0;

    // Features selected at least once, across all tasks and scenarios.
    std::vector<bool> seen;
    auto note = [&](std::size_t f) {
        if (f >= seen.size()) seen.resize(f + 1, false);
        seen[f] = true;
    };
    for (const auto& states : per_task) {
        for (const auto& state : states) {
            for (std::size_t f : state.selected) note(f);
        }
    }

    std::vector<RankedFeature> ranked;
    for (std::size_t f = 0; f < seen.size(); ++f) {
        if (!seen[f]) continue;
        double task_sum = 0.0;
        std::size_t task_count = 0;
        for (const auto& states : per_task) {
            if (states.empty()) continue;
            double scenario_sum = 0.0;
            for (const auto& state : states) {
                auto it = std::find(state.selected.begin(), state.selected.end(), f);
                scenario_sum += it == state.selected.end()
                                    ? penalty
                                    : static_cast<double>(it - state.selected.begin()) + 1.0;
            }
            task_sum += scenario_sum / static_cast<double>(states.size());
            ++task_count;
        }
        if (task_count == 0) continue;
        RankedFeature rf;
        rf.feature = f;
        rf.score = task_sum / static_cast<double>(task_count);
        ranked.push_back(rf);
    }

    std::sort(ranked.begin(), ranked.end(), [](const RankedFeature& a, const RankedFeature& b) {
        if (a.score != b.score) return a.score < b.score;
        return a.feature < b.feature;
    });
    constexpr double kTieTolerance = 1e-9;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        if (i > 0 && std::abs(ranked[i].score - ranked[i - 1].score) <= kTieTolerance) {
            ranked[i].rank = ranked[i - 1].rank;
            ranked[i].tied_with_previous = true;
        } else {
            ranked[i].rank = i + 1;
        }
    }
    return ranked;
}

std::vector<int> shuffle_labels(std::span<const int> y, std::uint64_t seed) {
    std::vector<int> shuffled(y.begin(), y.end());
    RngStream rng(seed);
    for (std::size_t i = shuffled.size(); i > 1; --i) {
        std::size_t j = rng.next_below(i);
        std::swap(shuffled[i - 1], shuffled[j]);
    }
    return shuffled;
}

}  // namespace sieve
