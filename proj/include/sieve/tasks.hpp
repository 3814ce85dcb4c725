#pragma once

#include <map>
#include <string>
#include <vector>

#include "sieve/corpus.hpp"
#include "sieve/features.hpp"
#include "sieve/matrix.hpp"

namespace sieve {

enum class Task { kT1, kT2, kT3 };

std::string to_string(Task task);
Task task_from_string(const std::string& name);

struct LabeledInstance {
    std::string user_id;
    std::string window_id;
    int label = 0;
    FeatureVector features;
};

/// Label maps over each task's population, no feature extraction.
///
/// t1: every user in either label set; extremists 1, regulars 0.
/// t2: every regular user; 1 iff the user retweeted an extremist-authored
///     event inside the window.
/// t3: regular users mentioned by at least one extremist (the contacted
///     set); 1 iff the user replied to an extremist strictly after the
///     earliest such mention.
/// All throw EmptyClass when the population (or a required side) is empty.
std::map<std::string, int> t1_labels(const Corpus& corpus);
std::map<std::string, int> t2_labels(const Corpus& corpus);
std::map<std::string, int> t3_labels(const Corpus& corpus);
std::map<std::string, int> task_labels(const Corpus& corpus, Task task);

/// Labels joined with extracted features, sorted by user_id.
std::vector<LabeledInstance> make_instances(const Corpus& corpus, Task task,
                                            const ExtractOptions& options = {});

/// Instance rows flattened for training. Row order follows the input.
struct Dataset {
    Matrix X;
    std::vector<int> y;
    std::vector<std::string> user_ids;
    std::string window_id;
};

Dataset to_dataset(const std::vector<LabeledInstance>& instances);

}  // namespace sieve
