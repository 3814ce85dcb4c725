#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "sieve/corpus.hpp"
#include "sieve/eval.hpp"
#include "sieve/tasks.hpp"

namespace sieve {

/// Generator controls. `separation` in [0, 1] scales how far the extremist
/// population's activity parameters sit from the regular baseline, on the
/// knobs backing `informative_features` only. Rates are probabilities.
struct SynthSpec {
    std::size_t n_extremist = 50;
    std::size_t n_regular = 50;
    std::size_t months = 6;
    double separation = 1.0;
    double adoption_rate = 0.3;     // fraction of regulars planted as t2 positives
    double reciprocity_rate = 0.5;  // fraction of contacted users that reply back
    std::vector<std::size_t> informative_features = {0, 2, 4, 6, 9};
    std::uint64_t seed = 42;
};

/// Per-class generating parameters after applying the separation knobs.
/// Exposed so tests can assert that separation 0 leaves both classes with
/// identical parameter sets.
struct SynthParams {
    double daily_rate = 0.8;        // events per user per day (Poisson)
    double retweet_prob = 0.22;
    double mention_prob = 0.30;
    double reply_prob = 0.08;
    double hashtag_rate = 0.5;      // hashtags per event (Poisson)
    double url_rate = 0.4;
    double rtcount_rate = 1.0;      // platform retweet-count field (Poisson)
    double followers_log_mean = 6.2;
    double followers_log_sigma = 0.8;
    double friends_log_mean = 5.7;
    double friends_log_sigma = 0.7;
    double favourites_rate = 200.0;
    double profile_url_prob = 0.3;
    double username_extra = 0.0;    // added to the 5..15 base length range

    bool operator==(const SynthParams&) const = default;
};

SynthParams derive_params(const SynthSpec& spec, bool extremist);

/// Planted positives, written to ground_truth.json and used to check the
/// label builders against the generator.
struct GroundTruth {
    std::set<std::string> t2_positives;
    std::set<std::string> t3_contacted;
    std::set<std::string> t3_positives;
};

/// In-memory generation. Deterministic given the spec; user ids are
/// e0000.. / r0000..; window = `months` calendar months from 2015-01-01 UTC.
/// Throws InvalidSpec.
struct SynthResult {
    Corpus corpus;
    GroundTruth truth;
};
SynthResult synthesize(const SynthSpec& spec);

/// Writes events.jsonl, profiles.jsonl, labels.jsonl, and ground_truth.json
/// under out_dir (created if needed). Events are emitted per user in id
/// order, each user's events in time order. Byte-deterministic.
void write_corpus_files(const SynthResult& result, const SynthSpec& spec,
                        const std::string& out_dir);

/// synthesize + write_corpus_files.
SynthResult generate_corpus(const SynthSpec& spec, const std::string& out_dir);

/// Direct feature-matrix generator: n rows per class, d standard-normal
/// columns; the informative columns get +shift added for the positive class.
/// Row ids are p0000..; label blocks alternate to keep folds balanced.
Dataset planted_matrix(std::size_t n_per_class, std::size_t d,
                       const std::vector<std::size_t>& informative, double shift,
                       std::uint64_t seed);

/// Runs the full t1 pipeline (extraction + stratified CV) on a corpus and
/// returns the mean AUC. With a separation-0 corpus this estimates the null.
double verify_null(const Corpus& corpus, const EvalConfig& config = {},
                   const ModelSpec& spec = {});

}  // namespace sieve
