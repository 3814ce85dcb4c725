#include "sieve/tasks.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

#include "sieve/errors.hpp"

namespace sieve {

std::string to_string(Task task) {
    switch (task) {
        case Task::kT1: return "t1";
        case Task::kT2: return "t2";
        case Task::kT3: return "t3";
    }
    return "t1";
}

Task task_from_string(const std::string& name) {
    std::string lower;
    for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "t1") return Task::kT1;
    if (lower == "t2") return Task::kT2;
    if (lower == "t3") return Task::kT3;
    throw InvalidSpec("unknown task: " + name);
}

std::map<std::string, int> t1_labels(const Corpus& corpus) {
    if (corpus.extremist_ids.empty() || corpus.regular_ids.empty()) {
        throw EmptyClass("t1 needs both extremist and regular users");
    }
    std::map<std::string, int> labels;
    for (const auto& id : corpus.extremist_ids) labels[id] = 1;
    for (const auto& id : corpus.regular_ids) labels[id] = 0;
    return labels;
}

std::map<std::string, int> t2_labels(const Corpus& corpus) {
    if (corpus.regular_ids.empty()) throw EmptyClass("t2 needs regular users");
    std::map<std::string, int> labels;
    for (const auto& id : corpus.regular_ids) labels[id] = 0;
    corpus.for_each_event([&](const EventRecord& event) {
        if (!event.is_retweet || !event.retweeted_author_id) return;
        if (!corpus.extremist_ids.contains(*event.retweeted_author_id)) return;
        auto it = labels.find(event.author_id);
        if (it != labels.end()) it->second = 1;
    });
    return labels;
}

std::map<std::string, int> t3_labels(const Corpus& corpus) {
    if (corpus.regular_ids.empty()) throw EmptyClass("t3 needs regular users");
    // First pass: earliest extremist mention per regular user.
    std::map<std::string, std::int64_t> first_contact;
    corpus.for_each_event([&](const EventRecord& event) {
        if (!corpus.extremist_ids.contains(event.author_id)) return;
        for (const auto& target : event.mention_ids) {
            if (!corpus.regular_ids.contains(target)) continue;
            auto [it, inserted] = first_contact.emplace(target, event.timestamp);
            if (!inserted && event.timestamp < it->second) it->second = event.timestamp;
        }
    });
    if (first_contact.empty()) throw EmptyClass("t3: no regular user was contacted by an extremist");
    std::map<std::string, int> labels;
    for (const auto& [id, ts] : first_contact) {
        (void)ts;
        labels[id] = 0;
    }
    // Second pass: replies to extremists strictly after the first contact.
    corpus.for_each_event([&](const EventRecord& event) {
        if (!event.in_reply_to_id) return;
        if (!corpus.extremist_ids.contains(*event.in_reply_to_id)) return;
        auto contact = first_contact.find(event.author_id);
        if (contact == first_contact.end()) return;
        if (event.timestamp > contact->second) labels[event.author_id] = 1;
    });
    return labels;
}

std::map<std::string, int> task_labels(const Corpus& corpus, Task task) {
    switch (task) {
        case Task::kT1: return t1_labels(corpus);
        case Task::kT2: return t2_labels(corpus);
        case Task::kT3: return t3_labels(corpus);
    }
    throw InvalidSpec("unknown task value");
}

std::vector<LabeledInstance> make_instances(const Corpus& corpus, Task task,
                                            const ExtractOptions& options) {
    auto labels = task_labels(corpus, task);
    auto features = extract_all(corpus, options);
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
    return instances;
}

Dataset to_dataset(const std::vector<LabeledInstance>& instances) {
    Dataset data;
    data.X = Matrix(instances.size(), kFeatureCount);
    data.y.reserve(instances.size());
    data.user_ids.reserve(instances.size());
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const auto& inst = instances[i];
        if (inst.features.values.size() != kFeatureCount) {
            throw DimensionMismatch("instance feature width mismatch for user " + inst.user_id);
        }
        for (std::size_t j = 0; j < kFeatureCount; ++j) data.X(i, j) = inst.features.values[j];
        data.y.push_back(inst.label);
        data.user_ids.push_back(inst.user_id);
        if (data.window_id.empty()) data.window_id = inst.window_id;
    }
    return data;
}

}  // namespace sieve
