#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sieve/corpus.hpp"

namespace sieve {

/// Number of features in the canonical catalog.
inline constexpr std::size_t kFeatureCount = 52;

/// Canonical catalog, CSV header order. Indices are stable forever:
/// 0-17 metadata & activity, 18-31 timing, 32-51 network statistics.
inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "followers_count",    "friends_count",      "tweets_count",       "favourites_count",
    "rt_tweet_ratio",     "mention_tweet_ratio", "hashtags_avg",      "rtcountfield_avg",
    "rtcountfield_var",   "mentions_avg",       "mentions_avg_nort",  "profile_url_count",
    "urls_avg",           "urls_std",           "urls_min",           "urls_max",
    "urls_proportion",    "username_length",    "tweets_per_day_avg", "tweets_per_day_var",
    "gap_all_avg",        "gap_all_std",        "gap_all_min",        "gap_all_max",
    "gap_rt_avg",         "gap_rt_std",         "gap_rt_min",         "gap_rt_max",
    "gap_mention_avg",    "gap_mention_std",    "gap_mention_min",    "gap_mention_max",
    "rter_followers_avg", "rter_followers_std", "rter_followers_min", "rter_followers_max",
    "rter_friends_avg",   "rter_friends_std",   "rter_friends_min",   "rter_friends_max",
    "mner_followers_avg", "mner_followers_std", "mner_followers_min", "mner_followers_max",
    "mner_friends_avg",   "mner_friends_std",   "mner_friends_min",   "mner_friends_max",
    "rt_by_others_avg",   "rt_by_others_std",   "rt_by_others_min",   "rt_by_others_max",
};

/// 0-based index of a catalog name; throws Error if unknown.
std::size_t feature_index(std::string_view name);

/// The 52-value vector for one user in one window. All values finite.
struct FeatureVector {
    std::string user_id;
    std::string window_id;
    std::vector<double> values;  // length kFeatureCount
};

struct NodeSnapshot {
    std::int64_t followers = 0;
    std::int64_t friends = 0;
    bool observed = false;
};

/// Directed retweet and mention links observed in a window, plus per-node
/// metadata snapshots (latest event-level values, profile fallback) and the
/// per-original-event counts of retweets received.
class InteractionGraph {
public:
    struct InEdges {
        std::vector<std::string> retweeters;  // one entry per incoming retweet event
        std::vector<std::string> mentioners;  // one entry per incoming (event, mention) pair
    };

    std::map<std::pair<std::string, std::string>, std::int64_t> retweet_edges;
    std::map<std::pair<std::string, std::string>, std::int64_t> mention_edges;
    std::unordered_map<std::string, InEdges> in_edges;
    std::unordered_map<std::string, NodeSnapshot> snapshots;
    // Per user: one count per original (non-retweet) event, in timeline order.
    // A retweet of U at time t is attributed to U's latest original at or
    // before t; retweets with no attributable original are not counted.
    std::unordered_map<std::string, std::vector<double>> retweets_of_originals;

    std::int64_t retweet_multiplicity(const std::string& src, const std::string& dst) const;
    std::int64_t mention_multiplicity(const std::string& src, const std::string& dst) const;
    const NodeSnapshot* snapshot(const std::string& user_id) const;
};

/// Source for the metadata-group retweet-count statistics (catalog 7-8).
/// The platform field is the default; kObservedEdges switches to the counts
/// of retweets observed in the corpus, the alternative reading.
enum class RetweetCountSource { kPlatformField, kObservedEdges };

struct ExtractOptions {
    RetweetCountSource rtcount_source = RetweetCountSource::kPlatformField;
    unsigned workers = 1;
};

/// Window identifier string: "<start>_<end>" in epoch seconds.
std::string window_id_of(const Corpus& corpus);

/// Catalog indices 0-17. `profile` may be null: profile-derived values
/// become 0. Empty timeline: activity values and ratios are 0.
std::array<double, 18> extract_metadata_features(const std::vector<EventRecord>& timeline,
                                                 const UserProfile* profile,
                                                 const InteractionGraph* graph,
                                                 const std::string& user_id,
                                                 const ExtractOptions& options = {});

/// Catalog indices 18-31. Fewer than two qualifying events makes all four
/// gap statistics equal to the window length in seconds.
std::array<double, 14> extract_timing_features(const std::vector<EventRecord>& timeline,
                                               std::int64_t window_start,
                                               std::int64_t window_end);

/// Builds the retweet/mention graph for the corpus window.
InteractionGraph build_interaction_graph(const Corpus& corpus);

/// Catalog indices 32-51. Empty multisets yield all-zero statistics.
std::array<double, 20> extract_network_features(const InteractionGraph& graph,
                                                const std::string& user_id);

/// One FeatureVector per labeled user (extremist_ids + regular_ids),
/// deterministic and independent of worker count.
std::map<std::string, FeatureVector> extract_all(const Corpus& corpus,
                                                 const ExtractOptions& options = {});

}  // namespace sieve
