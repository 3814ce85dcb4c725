#include "sieve/cli.hpp"

#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sieve/errors.hpp"
#include "sieve/eval.hpp"
#include "sieve/io.hpp"
#include "sieve/synth.hpp"

namespace sieve {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct CorpusArgs {
    std::string events;
    std::string profiles;
    std::string labels;
    std::string rtcount_source = "field";

    void attach(CLI::App* cmd) {
        cmd->add_option("--events", events, "events JSONL path")->required();
        cmd->add_option("--profiles", profiles, "profiles JSONL path")->required();
        cmd->add_option("--labels", labels, "labels JSONL path")->required();
        cmd->add_option("--rtcount-source", rtcount_source,
                        "retweet-count statistics source: field | edges")
            ->check(CLI::IsMember({"field", "edges"}));
    }

    Corpus load() const { return load_corpus(events, profiles, labels); }

    ExtractOptions extract_options(unsigned workers) const {
        ExtractOptions opt;
        opt.rtcount_source = rtcount_source == "edges" ? RetweetCountSource::kObservedEdges
                                                       : RetweetCountSource::kPlatformField;
        opt.workers = workers;
        return opt;
    }

    std::vector<std::string> paths() const { return {events, profiles, labels}; }
};

json metrics_json(const MetricsReport& m) {
    json j;
    j["tp"] = m.tp;
    j["fp"] = m.fp;
    j["tn"] = m.tn;
    j["fn"] = m.fn;
    j["precision"] = m.precision;
    j["recall"] = m.recall;
    j["f1"] = m.f1;
    j["auc"] = m.auc;
    j["n"] = m.n;
    return j;
}

json roc_json(const std::vector<std::pair<double, double>>& points) {
    json arr = json::array();
    for (const auto& [fpr, tpr] : points) arr.push_back(json::array({fpr, tpr}));
    return arr;
}

ModelGrid load_grid(const std::string& grid_path, const std::string& model,
                    std::uint64_t seed) {
    if (!grid_path.empty()) return grid_from_json_text(read_text_file(grid_path), seed);
    return default_grid(model_kind_from_string(model), seed);
}

std::string out_path(const std::string& out_dir, const std::string& name) {
    fs::create_directories(out_dir);
    return (fs::path(out_dir) / name).string();
}

int run_parsed(const std::vector<std::string>& args);

// --- subcommand bodies -----------------------------------------------------

struct SynthCmd {
    std::string out_dir;
    SynthSpec spec;
    std::vector<std::size_t> informative = {0, 2, 4, 6, 9};

    int execute() {
        spec.informative_features = informative;
        SynthResult result = generate_corpus(spec, out_dir);
        json config;
        config["n_extremist"] = spec.n_extremist;
        config["n_regular"] = spec.n_regular;
        config["months"] = spec.months;
        config["separation"] = spec.separation;
        config["adoption_rate"] = spec.adoption_rate;
        config["reciprocity_rate"] = spec.reciprocity_rate;
        config["informative_features"] = spec.informative_features;
        config["seed"] = spec.seed;
        write_manifest(out_path(out_dir, "manifest.json"), "synth", config, {},
                       {"events.jsonl", "profiles.jsonl", "labels.jsonl", "ground_truth.json"});
        std::cout << "synth: " << result.corpus.events.size() << " events, "
                  << result.corpus.profiles.size() << " users -> " << out_dir << "\n";
        return 0;
    }
};

struct ExtractCmd {
    CorpusArgs corpus;
    std::string task = "t1";
    std::string out_dir;
    unsigned workers = 1;
    std::uint64_t seed = 42;

    int execute() {
        Corpus c = corpus.load();
        auto instances = make_instances(c, task_from_string(task), corpus.extract_options(workers));
        const std::string csv = out_path(out_dir, "features.csv");
        write_instances_csv(instances, task_from_string(task), csv);
        json config;
        config["task"] = task;
        config["rtcount_source"] = corpus.rtcount_source;
        config["seed"] = seed;
        write_manifest(out_path(out_dir, "manifest.json"), "extract", config, corpus.paths(),
                       {"features.csv"});
        std::cout << "extract: " << instances.size() << " instances -> " << csv << "\n";
        return 0;
    }
};

struct TrainCmd {
    std::string features_csv;
    std::string model = "rf";
    std::string grid_path;
    std::string out_dir;
    std::size_t folds = 5;
    std::uint64_t seed = 42;
    unsigned workers = 1;

    int execute() {
        Task task = Task::kT1;
        auto instances = read_instances_csv(features_csv, &task);
        Dataset data = to_dataset(instances);
        EvalConfig config;
        config.k = folds;
        config.seed = seed;
        config.workers = workers;
        ModelGrid grid = load_grid(grid_path, model, seed);
        GridSearchResult gs = grid_search(data, grid, config);
        ModelSpec final_spec = gs.best;
        if (final_spec.kind == ModelKind::kForest) final_spec.forest.workers = workers;
        TrainedModel trained = fit_model(final_spec, data.X, data.y);
        save_model(trained, out_path(out_dir, "model.json"));

        json report;
        report["type"] = "train";
        report["task"] = to_string(task);
        report["model"] = model;
        report["seed"] = seed;
        report["folds"] = folds;
        json grid_arr = json::array();
        for (std::size_t g = 0; g < grid.points.size(); ++g) {
            json entry;
            entry["params"] = grid.points[g].describe();
            entry["auc"] = gs.mean_auc[g];
            grid_arr.push_back(std::move(entry));
        }
        report["grid"] = std::move(grid_arr);
        report["best_index"] = gs.best_index;
        report["best_params"] = gs.best.describe();
        report["cv_mean"] = metrics_json(gs.best_cv.mean);
        write_text_file(out_path(out_dir, "train_report.json"), report.dump(2) + "\n");

        json config_echo;
        config_echo["model"] = model;
        config_echo["folds"] = folds;
        config_echo["seed"] = seed;
        config_echo["grid"] = grid_path.empty() ? "default" : grid_path;
        write_manifest(out_path(out_dir, "manifest.json"), "train", config_echo, {features_csv},
                       {"model.json", "train_report.json"});
        std::cout << "train: best " << gs.best.describe() << " cv auc "
                  << format_double(gs.best_cv.mean.auc) << " -> " << out_dir << "\n";
        return 0;
    }
};

struct EvalStaticCmd {
    CorpusArgs corpus;
    std::string task = "t1";
    std::string model = "rf";
    std::string grid_path;
    std::string out_dir;
    std::size_t folds = 5;
    std::uint64_t seed = 42;
    unsigned workers = 1;

    int execute() {
        Corpus c = corpus.load();
        auto instances = make_instances(c, task_from_string(task), corpus.extract_options(workers));
        Dataset data = to_dataset(instances);
        EvalConfig config;
        config.k = folds;
        config.seed = seed;
        config.workers = workers;
        ModelGrid grid = load_grid(grid_path, model, seed);
        GridSearchResult gs = grid_search(data, grid, config);

        json report;
        report["type"] = "eval_static";
        report["task"] = task;
        report["model"] = model;
        report["seed"] = seed;
        report["folds"] = folds;
        json grid_arr = json::array();
        for (std::size_t g = 0; g < grid.points.size(); ++g) {
            json entry;
            entry["params"] = grid.points[g].describe();
            entry["auc"] = gs.mean_auc[g];
            grid_arr.push_back(std::move(entry));
        }
        report["grid"] = std::move(grid_arr);
        report["best_params"] = gs.best.describe();
        report["cv_mean"] = metrics_json(gs.best_cv.mean);
        json fold_arr = json::array();
        for (const MetricsReport& m : gs.best_cv.folds) fold_arr.push_back(metrics_json(m));
        report["cv_folds"] = std::move(fold_arr);
        report["roc_oof"] = roc_json(roc_curve(gs.best_cv.oof_labels, gs.best_cv.oof_scores));
        write_text_file(out_path(out_dir, "eval_static.json"), report.dump(2) + "\n");

        json config_echo;
        config_echo["task"] = task;
        config_echo["model"] = model;
        config_echo["folds"] = folds;
        config_echo["seed"] = seed;
        config_echo["rtcount_source"] = corpus.rtcount_source;
        config_echo["grid"] = grid_path.empty() ? "default" : grid_path;
        write_manifest(out_path(out_dir, "manifest.json"), "eval-static", config_echo,
                       corpus.paths(), {"eval_static.json"});
        std::cout << "eval-static " << task << ": best " << gs.best.describe() << " auc "
                  << format_double(gs.best_cv.mean.auc) << "\n";
        return 0;
    }
};

struct EvalTemporalCmd {
    CorpusArgs corpus;
    std::string task = "t1";
    std::string model = "rf";
    std::string grid_path;
    std::string out_dir;
    std::size_t folds = 5;
    std::uint64_t seed = 42;
    unsigned workers = 1;
    bool history_features = false;

    int execute() {
        Corpus c = corpus.load();
        EvalConfig config;
        config.k = folds;
        config.seed = seed;
        config.workers = workers;
        ModelGrid grid = load_grid(grid_path, model, seed);
        TemporalPlan plan = default_temporal_plan(c);
        TemporalOptions options;
        options.extract = corpus.extract_options(workers);
        options.test_features_include_history = history_features;
        TemporalResult result =
            temporal_evaluate(c, task_from_string(task), grid, plan, config, options);

        json report;
        report["type"] = "eval_temporal";
        report["task"] = task;
        report["model"] = model;
        report["seed"] = seed;
        report["folds"] = folds;
        report["history_features"] = history_features;
        json scen_arr = json::array();
        for (const ScenarioResult& sr : result.scenarios) {
            json s;
            s["name"] = sr.scenario.name;
            s["train_start"] = sr.scenario.train_start;
            s["train_end"] = sr.scenario.train_end;
            s["test_start"] = sr.scenario.test_start;
            s["test_end"] = sr.scenario.test_end;
            s["chosen"] = sr.chosen.describe();
            s["train_cv_auc"] = sr.train_cv_auc;
            s["n_train"] = sr.n_train;
            s["n_test"] = sr.n_test;
            s["test"] = metrics_json(sr.test);
            s["roc"] = roc_json(roc_curve(sr.test_labels, sr.test_scores));
            scen_arr.push_back(std::move(s));
        }
        report["scenarios"] = std::move(scen_arr);
        write_text_file(out_path(out_dir, "eval_temporal.json"), report.dump(2) + "\n");

        json config_echo;
        config_echo["task"] = task;
        config_echo["model"] = model;
        config_echo["folds"] = folds;
        config_echo["seed"] = seed;
        config_echo["rtcount_source"] = corpus.rtcount_source;
        config_echo["history_features"] = history_features;
        config_echo["grid"] = grid_path.empty() ? "default" : grid_path;
        write_manifest(out_path(out_dir, "manifest.json"), "eval-temporal", config_echo,
                       corpus.paths(), {"eval_temporal.json"});
        std::cout << "eval-temporal " << task << ": " << result.scenarios.size()
                  << " scenarios -> " << out_dir << "\n";
        return 0;
    }
};

struct SelectFeaturesCmd {
    CorpusArgs corpus;
    std::string task = "all";
    std::string model = "rf";
    std::string grid_path;
    std::string out_dir;
    std::size_t folds = 5;
    std::uint64_t seed = 42;
    double epsilon = 0.002;
    std::size_t cap = 11;
    unsigned workers = 1;

    int execute() {
        Corpus c = corpus.load();
        EvalConfig config;
        config.k = folds;
        config.seed = seed;
        config.epsilon = epsilon;
        config.cap = cap;
        config.workers = workers;
        ModelGrid grid = load_grid(grid_path, model, seed);
        TemporalPlan plan = default_temporal_plan(c);
        TemporalOptions options;
        options.extract = corpus.extract_options(workers);
        options.run_selection = true;

        std::vector<Task> tasks;
        if (task == "all") {
            tasks = {Task::kT1, Task::kT2, Task::kT3};
        } else {
            tasks = {task_from_string(task)};
        }

        json report;
        report["type"] = "selection";
        report["model"] = model;
        report["seed"] = seed;
        report["folds"] = folds;
        report["epsilon"] = epsilon;
        report["cap"] = cap;
        std::vector<std::vector<SelectionState>> per_task;
        json task_arr = json::array();
        for (Task t : tasks) {
            TemporalResult result = temporal_evaluate(c, t, grid, plan, config, options);
            std::vector<SelectionState> states;
            json scen_arr = json::array();
            for (const ScenarioResult& sr : result.scenarios) {
                states.push_back(sr.selection);
                json s;
                s["name"] = sr.scenario.name;
                json names = json::array();
                for (std::size_t f : sr.selection.selected) {
                    names.push_back(std::string(kFeatureNames[f]));
                }
                s["selected"] = std::move(names);
                s["auc_trace"] = sr.selection.auc_trace;
                scen_arr.push_back(std::move(s));
            }
            per_task.push_back(std::move(states));
            json tj;
            tj["task"] = to_string(t);
            tj["scenarios"] = std::move(scen_arr);
            task_arr.push_back(std::move(tj));
        }
        report["tasks"] = std::move(task_arr);

        auto ranking = aggregate_feature_ranks(per_task, cap);
        json rank_arr = json::array();
        for (const RankedFeature& rf : ranking) {
            json r;
            r["rank"] = rf.rank;
            r["tied"] = rf.tied_with_previous;
            r["feature"] = std::string(kFeatureNames[rf.feature]);
            r["score"] = rf.score;
            rank_arr.push_back(std::move(r));
        }
        report["ranking"] = std::move(rank_arr);
        write_text_file(out_path(out_dir, "selection.json"), report.dump(2) + "\n");

        json config_echo;
        config_echo["task"] = task;
        config_echo["model"] = model;
        config_echo["folds"] = folds;
        config_echo["seed"] = seed;
        config_echo["epsilon"] = epsilon;
        config_echo["cap"] = cap;
        config_echo["rtcount_source"] = corpus.rtcount_source;
        config_echo["grid"] = grid_path.empty() ? "default" : grid_path;
        write_manifest(out_path(out_dir, "manifest.json"), "select-features", config_echo,
                       corpus.paths(), {"selection.json"});
        std::cout << "select-features: " << ranking.size() << " features ranked -> " << out_dir
                  << "\n";
        return 0;
    }
};

struct ReportCmd {
    std::string input;
    std::string out_dir;

    static std::string fmt3(double v) {
        std::ostringstream out;
        out.setf(std::ios::fixed);
        out.precision(3);
        out << v;
        return out.str();
    }

    static std::string pad(const std::string& s, std::size_t width) {
        return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
    }

    int execute() {
        json doc = json::parse(read_text_file(input));
        const std::string type = doc.value("type", "");
        std::ostringstream text;
        std::vector<std::string> outputs;

        if (type == "eval_static") {
            text << "static evaluation  task=" << doc["task"].get<std::string>()
                 << "  model=" << doc["model"].get<std::string>() << "\n\n";
            text << pad("params", 34) << "auc\n";
            for (const json& g : doc["grid"]) {
                text << pad(g["params"].get<std::string>(), 34)
                     << fmt3(g["auc"].get<double>()) << "\n";
            }
            const json& m = doc["cv_mean"];
            text << "\nbest: " << doc["best_params"].get<std::string>() << "\n";
            text << "precision " << fmt3(m["precision"].get<double>()) << "  recall "
                 << fmt3(m["recall"].get<double>()) << "  f1 " << fmt3(m["f1"].get<double>())
                 << "  auc " << fmt3(m["auc"].get<double>()) << "  n " << m["n"].get<long>()
                 << "\n";
            if (doc.contains("roc_oof")) {
                std::vector<std::pair<double, double>> points;
                for (const json& p : doc["roc_oof"]) {
                    points.emplace_back(p[0].get<double>(), p[1].get<double>());
                }
                write_roc_csv(points, out_path(out_dir, "roc_oof.csv"));
                outputs.push_back("roc_oof.csv");
            }
        } else if (type == "eval_temporal") {
            text << "temporal evaluation  task=" << doc["task"].get<std::string>()
                 << "  model=" << doc["model"].get<std::string>() << "\n\n";
            const json& scenarios = doc["scenarios"];
            const std::size_t w = 10;
            text << pad("metric", 12);
            for (const json& s : scenarios) text << pad(s["name"].get<std::string>(), w);
            text << "\n";
            auto row = [&](const std::string& name, auto getter) {
                text << pad(name, 12);
                for (const json& s : scenarios) text << pad(getter(s), w);
                text << "\n";
            };
            row("auc", [&](const json& s) { return fmt3(s["test"]["auc"].get<double>()); });
            row("precision",
                [&](const json& s) { return fmt3(s["test"]["precision"].get<double>()); });
            row("recall", [&](const json& s) { return fmt3(s["test"]["recall"].get<double>()); });
            row("f1", [&](const json& s) { return fmt3(s["test"]["f1"].get<double>()); });
            row("n_test", [&](const json& s) { return std::to_string(s["n_test"].get<long>()); });
            row("chosen", [&](const json& s) { return s["chosen"].get<std::string>(); });
            for (const json& s : scenarios) {
                if (!s.contains("roc")) continue;
                std::vector<std::pair<double, double>> points;
                for (const json& p : s["roc"]) {
                    points.emplace_back(p[0].get<double>(), p[1].get<double>());
                }
                const std::string name = "roc_" + s["name"].get<std::string>() + ".csv";
                write_roc_csv(points, out_path(out_dir, name));
                outputs.push_back(name);
            }
        } else if (type == "selection") {
            text << "feature ranking  model=" << doc["model"].get<std::string>() << "\n\n";
            text << pad("rank", 6) << pad("feature", 22) << "mean rank\n";
            for (const json& r : doc["ranking"]) {
                const std::string rank_str =
                    r["tied"].get<bool>() ? "=" : std::to_string(r["rank"].get<long>());
                text << pad(rank_str, 6) << pad(r["feature"].get<std::string>(), 22)
                     << fmt3(r["score"].get<double>()) << "\n";
            }
            for (const json& tj : doc["tasks"]) {
                text << "\ntask " << tj["task"].get<std::string>() << "\n";
                for (const json& s : tj["scenarios"]) {
                    text << "  " << pad(s["name"].get<std::string>(), 8);
                    bool first = true;
                    for (const json& f : s["selected"]) {
                        if (!first) text << ", ";
                        text << f.get<std::string>();
                        first = false;
                    }
                    text << "\n";
                }
            }
        } else if (type == "train") {
            text << "training report  model=" << doc["model"].get<std::string>() << "\n";
            text << "best: " << doc["best_params"].get<std::string>() << "  cv auc "
                 << fmt3(doc["cv_mean"]["auc"].get<double>()) << "\n";
        } else {
            throw SchemaViolation("unrecognized result document: " + input);
        }

        write_text_file(out_path(out_dir, "report.txt"), text.str());
        outputs.insert(outputs.begin(), "report.txt");
        json config_echo;
        config_echo["input"] = input;
        write_manifest(out_path(out_dir, "manifest.json"), "report", config_echo, {input},
                       outputs);
        std::cout << "report -> " << out_path(out_dir, "report.txt") << "\n";
        return 0;
    }
};

int run_parsed(const std::vector<std::string>& args) {
    CLI::App app{"sieve: behavioral feature pipeline for timestamped social corpora"};
    app.require_subcommand(1);

    SynthCmd synth_cmd;
    auto* synth = app.add_subcommand("synth", "generate a deterministic synthetic corpus");
    synth->add_option("--out-dir", synth_cmd.out_dir, "output directory")->required();
    synth->add_option("--n-extremist", synth_cmd.spec.n_extremist, "extremist user count");
    synth->add_option("--n-regular", synth_cmd.spec.n_regular, "regular user count");
    synth->add_option("--months", synth_cmd.spec.months, "window length in calendar months");
    synth->add_option("--separation", synth_cmd.spec.separation, "class separation in [0,1]");
    synth->add_option("--adoption-rate", synth_cmd.spec.adoption_rate, "planted t2 positive rate");
    synth->add_option("--reciprocity-rate", synth_cmd.spec.reciprocity_rate,
                      "planted t3 reply rate");
    synth->add_option("--informative", synth_cmd.informative,
                      "informative catalog indices (repeatable)");
    synth->add_option("--seed", synth_cmd.spec.seed, "rng seed");

    ExtractCmd extract_cmd;
    auto* extract = app.add_subcommand("extract", "corpus -> feature CSV");
    extract_cmd.corpus.attach(extract);
    extract->add_option("--task", extract_cmd.task, "t1 | t2 | t3")
        ->check(CLI::IsMember({"t1", "t2", "t3"}));
    extract->add_option("--out-dir", extract_cmd.out_dir, "output directory")->required();
    extract->add_option("--workers", extract_cmd.workers, "worker threads");
    extract->add_option("--seed", extract_cmd.seed, "rng seed (echoed in manifest)");

    TrainCmd train_cmd;
    auto* train = app.add_subcommand("train", "feature CSV -> model file");
    train->add_option("features", train_cmd.features_csv, "features.csv from extract")
        ->required();
    train->add_option("--model", train_cmd.model, "lr | rf")
        ->check(CLI::IsMember({"lr", "rf"}));
    train->add_option("--grid", train_cmd.grid_path, "hyperparameter grid JSON");
    train->add_option("--folds", train_cmd.folds, "cross-validation folds");
    train->add_option("--seed", train_cmd.seed, "rng seed");
    train->add_option("--workers", train_cmd.workers, "worker threads");
    train->add_option("--out-dir", train_cmd.out_dir, "output directory")->required();

    EvalStaticCmd eval_static_cmd;
    auto* eval_static = app.add_subcommand("eval-static", "fold-averaged task evaluation");
    eval_static_cmd.corpus.attach(eval_static);
    eval_static->add_option("--task", eval_static_cmd.task, "t1 | t2 | t3")
        ->check(CLI::IsMember({"t1", "t2", "t3"}));
    eval_static->add_option("--model", eval_static_cmd.model, "lr | rf")
        ->check(CLI::IsMember({"lr", "rf"}));
    eval_static->add_option("--grid", eval_static_cmd.grid_path, "hyperparameter grid JSON");
    eval_static->add_option("--folds", eval_static_cmd.folds, "cross-validation folds");
    eval_static->add_option("--seed", eval_static_cmd.seed, "rng seed");
    eval_static->add_option("--workers", eval_static_cmd.workers, "worker threads");
    eval_static->add_option("--out-dir", eval_static_cmd.out_dir, "output directory")->required();

    EvalTemporalCmd eval_temporal_cmd;
    auto* eval_temporal = app.add_subcommand("eval-temporal", "cumulative monthly evaluation");
    eval_temporal_cmd.corpus.attach(eval_temporal);
    eval_temporal->add_option("--task", eval_temporal_cmd.task, "t1 | t2 | t3")
        ->check(CLI::IsMember({"t1", "t2", "t3"}));
    eval_temporal->add_option("--model", eval_temporal_cmd.model, "lr | rf")
        ->check(CLI::IsMember({"lr", "rf"}));
    eval_temporal->add_option("--grid", eval_temporal_cmd.grid_path, "hyperparameter grid JSON");
    eval_temporal->add_option("--folds", eval_temporal_cmd.folds, "cross-validation folds");
    eval_temporal->add_option("--seed", eval_temporal_cmd.seed, "rng seed");
    eval_temporal->add_option("--workers", eval_temporal_cmd.workers, "worker threads");
    eval_temporal->add_flag("--history-features", eval_temporal_cmd.history_features,
                            "extract test features over train+test span");
    eval_temporal->add_option("--out-dir", eval_temporal_cmd.out_dir, "output directory")
        ->required();

    SelectFeaturesCmd select_cmd;
    auto* select = app.add_subcommand("select-features",
                                      "greedy forward selection per temporal scenario");
    select_cmd.corpus.attach(select);
    select->add_option("--task", select_cmd.task, "t1 | t2 | t3 | all")
        ->check(CLI::IsMember({"t1", "t2", "t3", "all"}));
    select->add_option("--model", select_cmd.model, "lr | rf")
        ->check(CLI::IsMember({"lr", "rf"}));
    select->add_option("--grid", select_cmd.grid_path, "hyperparameter grid JSON");
    select->add_option("--folds", select_cmd.folds, "cross-validation folds");
    select->add_option("--seed", select_cmd.seed, "rng seed");
    select->add_option("--epsilon", select_cmd.epsilon, "minimum AUC improvement");
    select->add_option("--cap", select_cmd.cap, "maximum selected features");
    select->add_option("--workers", select_cmd.workers, "worker threads");
    select->add_option("--out-dir", select_cmd.out_dir, "output directory")->required();

    ReportCmd report_cmd;
    auto* report = app.add_subcommand("report", "render a result JSON to text tables");
    report->add_option("input", report_cmd.input, "result JSON from an eval command")
        ->required();
    report->add_option("--out-dir", report_cmd.out_dir, "output directory")->required();

    std::vector<const char*> argv;
    argv.push_back("sieve");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return 1;
    }

    try {
        if (synth->parsed()) return synth_cmd.execute();
        if (extract->parsed()) return extract_cmd.execute();
        if (train->parsed()) return train_cmd.execute();
        if (eval_static->parsed()) return eval_static_cmd.execute();
        if (eval_temporal->parsed()) return eval_temporal_cmd.execute();
        if (select->parsed()) return select_cmd.execute();
        if (report->parsed()) return report_cmd.execute();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "usage error: no subcommand given\n" << app.help();
    return 1;
}

}  // namespace

int run(const std::vector<std::string>& args) { return run_parsed(args); }

}  // namespace sieve
