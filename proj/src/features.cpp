#include "sieve/features.hpp"

#include <algorithm>
#include <cmath>

#include "sieve/parallel.hpp"
#include "sieve/stats.hpp"

namespace sieve {

namespace {

std::vector<double> consecutive_gaps(const std::vector<std::int64_t>& timestamps) {
    std::vector<double> gaps;
    if (timestamps.size() < 2) return gaps;
    gaps.reserve(timestamps.size() - 1);
    for (std::size_t i = 1; i < timestamps.size(); ++i)
        gaps.push_back(static_cast<double>(timestamps[i] - timestamps[i - 1]));
    return gaps;
}

void append_summary(std::vector<double>& out, const SummaryStats& s) {
    out.push_back(s.avg);
    out.push_back(s.std);
    out.push_back(s.min);
    out.push_back(s.max);
}

}  // namespace

std::size_t feature_index(std::string_view name) {
    for (std::size_t i = 0; i < kFeatureNames.size(); ++i) {
        if (kFeatureNames[i] == name) return i;
    }
    throw Error("unknown feature name: " + std::string(name));
}

std::int64_t InteractionGraph::retweet_multiplicity(const std::string& src,
                                                    const std::string& dst) const {
    auto it = retweet_edges.find({src, dst});
    return it == retweet_edges.end() ? 0 : it->second;
}

std::int64_t InteractionGraph::mention_multiplicity(const std::string& src,
                                                     const std::string& dst) const {
    auto it = mention_edges.find({src, dst});
    return it == mention_edges.end() ? 0 : it->second;
}

const NodeSnapshot* InteractionGraph::snapshot(const std::string& user_id) const {
    auto it = snapshots.find(user_id);
    return it == snapshots.end() ? nullptr : &it->second;
}

std::string window_id_of(const Corpus& corpus) {
    return std::to_string(corpus.window_start) + "_" + std::to_string(corpus.window_end);
}

std::array<double, 18> extract_metadata_features(const std::vector<EventRecord>& timeline,
                                                 const UserProfile* profile,
                                                 const InteractionGraph* graph,
                                                 const std::string& user_id,
                                                 const ExtractOptions& options) {
    std::array<double, 18> f{};
    if (profile) {
        f[0] = static_cast<double>(profile->followers_count);
        f[1] = static_cast<double>(profile->friends_count);
        f[3] = static_cast<double>(profile->favourites_count);
        f[11] = static_cast<double>(profile->profile_desc_url_count);
        f[17] = static_cast<double>(profile->username_length);
    }
    const std::size_t n = timeline.size();
    f[2] = static_cast<double>(n);
    if (n == 0) return f;

    std::size_t retweets = 0;
    std::size_t with_mention = 0;
    std::size_t with_url = 0;
    std::vector<double> hashtags, rtcount, mentions, mentions_nort, urls;
    hashtags.reserve(n);
    rtcount.reserve(n);
    mentions.reserve(n);
    urls.reserve(n);
    for (const EventRecord& e : timeline) {
        if (e.is_retweet) ++retweets;
        if (!e.mention_ids.empty()) ++with_mention;
        if (e.url_count > 0) ++with_url;
        hashtags.push_back(static_cast<double>(e.hashtag_count));
        rtcount.push_back(static_cast<double>(e.retweet_count_field));
        mentions.push_back(static_cast<double>(e.mention_ids.size()));
        if (!e.is_retweet) mentions_nort.push_back(static_cast<double>(e.mention_ids.size()));
        urls.push_back(static_cast<double>(e.url_count));
    }
    const double dn = static_cast<double>(n);
    f[4] = static_cast<double>(retweets) / dn;
    f[5] = static_cast<double>(with_mention) / dn;
    f[6] = mean_of(hashtags);
    if (options.rtcount_source == RetweetCountSource::kObservedEdges && graph) {
        std::span<const double> observed;
        auto it = graph->retweets_of_originals.find(user_id);
        if (it != graph->retweets_of_originals.end()) observed = it->second;
        f[7] = mean_of(observed);
        f[8] = population_variance(observed);
    } else {
        f[7] = mean_of(rtcount);
        f[8] = population_variance(rtcount);
    }
    f[9] = mean_of(mentions);
    f[10] = mean_of(mentions_nort);
    const SummaryStats u = summarize(urls);
    f[12] = u.avg;
    f[13] = u.std;
    f[14] = u.min;
    f[15] = u.max;
    f[16] = static_cast<double>(with_url) / dn;
    return f;
}

std::array<double, 14> extract_timing_features(const std::vector<EventRecord>& timeline,
                                               std::int64_t window_start,
                                               std::int64_t window_end) {
    std::array<double, 14> f{};
    const std::int64_t window_len = window_end - window_start;
    const std::int64_t days = std::max<std::int64_t>(1, (window_len + 86399) / 86400);

    std::vector<double> per_day(static_cast<std::size_t>(days), 0.0);
    std::vector<std::int64_t> ts_all, ts_rt, ts_mention;
    for (const EventRecord& e : timeline) {
        std::int64_t bucket = (e.timestamp - window_start) / 86400;
        if (bucket < 0) bucket = 0;
        if (bucket >= days) bucket = days - 1;
        per_day[static_cast<std::size_t>(bucket)] += 1.0;
        ts_all.push_back(e.timestamp);
        if (e.is_retweet) ts_rt.push_back(e.timestamp);
        if (!e.mention_ids.empty()) ts_mention.push_back(e.timestamp);
    }
    f[0] = mean_of(per_day);
    f[1] = population_variance(per_day);

    const double sentinel = static_cast<double>(window_len);
    std::size_t pos = 2;
    for (const auto* group : {&ts_all, &ts_rt, &ts_mention}) {
        const std::vector<double> gaps = consecutive_gaps(*group);
        const SummaryStats s = summarize(gaps, sentinel);
        f[pos++] = s.avg;
        f[pos++] = s.std;
        f[pos++] = s.min;
        f[pos++] = s.max;
    }
    return f;
}

InteractionGraph build_interaction_graph(const Corpus& corpus) {
    InteractionGraph graph;
    std::unordered_map<std::string, std::vector<std::int64_t>> originals_ts;
    std::unordered_map<std::string, std::vector<std::pair<std::int64_t, std::string>>> incoming_rt;

    corpus.for_each_event([&](const EventRecord& e) {
        graph.snapshots[e.author_id] =
            NodeSnapshot{e.author_followers, e.author_friends, true};
        if (e.is_retweet && e.retweeted_author_id) {
            const std::string& dst = *e.retweeted_author_id;
            ++graph.retweet_edges[{e.author_id, dst}];
            graph.in_edges[dst].retweeters.push_back(e.author_id);
            incoming_rt[dst].emplace_back(e.timestamp, e.author_id);
        } else {
            originals_ts[e.author_id].push_back(e.timestamp);
        }
        for (const std::string& m : e.mention_ids) {
            ++graph.mention_edges[{e.author_id, m}];
            graph.in_edges[m].mentioners.push_back(e.author_id);
        }
    });

    // Profile fallback for edge endpoints never observed authoring an event.
    for (const auto& [key, ignored] : graph.mention_edges) {
        (void)ignored;
        if (!graph.snapshots.count(key.second)) {
            if (const UserProfile* p = corpus.find_profile(key.second))
                graph.snapshots[key.second] = NodeSnapshot{p->followers_count, p->friends_count, true};
            else
                graph.snapshots[key.second] = NodeSnapshot{0, 0, false};
        }
    }
    for (const auto& [key, ignored] : graph.retweet_edges) {
        (void)ignored;
        if (!graph.snapshots.count(key.second)) {
            if (const UserProfile* p = corpus.find_profile(key.second))
                graph.snapshots[key.second] = NodeSnapshot{p->followers_count, p->friends_count, true};
            else
                graph.snapshots[key.second] = NodeSnapshot{0, 0, false};
        }
    }

    // Attribute each incoming retweet to the target's latest original at or
    // before the retweet time; unattributable retweets are dropped.
    for (auto& [user, ts_list] : originals_ts) {
        std::vector<double> counts(ts_list.size(), 0.0);
        auto rt_it = incoming_rt.find(user);
        if (rt_it != incoming_rt.end()) {
            for (const auto& [t, src] : rt_it->second) {
                if (src == user) continue;  // only retweets by others
                auto pos = std::upper_bound(ts_list.begin(), ts_list.end(), t);
                if (pos == ts_list.begin()) continue;
                counts[static_cast<std::size_t>(pos - ts_list.begin()) - 1] += 1.0;
            }
        }
        graph.retweets_of_originals[user] = std::move(counts);
    }
    return graph;
}

std::array<double, 20> extract_network_features(const InteractionGraph& graph,
                                                const std::string& user_id) {
    std::vector<double> rter_followers, rter_friends, mner_followers, mner_friends;
    auto it = graph.in_edges.find(user_id);
    if (it != graph.in_edges.end()) {
        for (const std::string& src : it->second.retweeters) {
            const NodeSnapshot* s = graph.snapshot(src);
            if (s && s->observed) {
                rter_followers.push_back(static_cast<double>(s->followers));
                rter_friends.push_back(static_cast<double>(s->friends));
            }
        }
        for (const std::string& src : it->second.mentioners) {
            const NodeSnapshot* s = graph.snapshot(src);
            if (s && s->observed) {
                mner_followers.push_back(static_cast<double>(s->followers));
                mner_friends.push_back(static_cast<double>(s->friends));
            }
        }
    }
    std::span<const double> rt_counts;
    auto rc = graph.retweets_of_originals.find(user_id);
    if (rc != graph.retweets_of_originals.end()) rt_counts = rc->second;

    std::vector<double> out;
    out.reserve(20);
    append_summary(out, summarize(rter_followers));
    append_summary(out, summarize(rter_friends));
    append_summary(out, summarize(mner_followers));
    append_summary(out, summarize(mner_friends));
    append_summary(out, summarize(rt_counts));

    std::array<double, 20> f{};
    std::copy(out.begin(), out.end(), f.begin());
    return f;
}

std::map<std::string, FeatureVector> extract_all(const Corpus& corpus,
                                                 const ExtractOptions& options) {
    std::vector<std::string> users;
    users.reserve(corpus.extremist_ids.size() + corpus.regular_ids.size());
    users.insert(users.end(), corpus.extremist_ids.begin(), corpus.extremist_ids.end());
    users.insert(users.end(), corpus.regular_ids.begin(), corpus.regular_ids.end());
    std::sort(users.begin(), users.end());

    const InteractionGraph graph = build_interaction_graph(corpus);
    const std::string wid = window_id_of(corpus);

    std::vector<FeatureVector> results(users.size());
    parallel_for(users.size(), options.workers, [&](std::size_t i) {
        const std::string& user = users[i];
        const std::vector<EventRecord> timeline = corpus.user_timeline(user);
        const UserProfile* profile = corpus.find_profile(user);

        FeatureVector fv;
        fv.user_id = user;
        fv.window_id = wid;
        fv.values.reserve(kFeatureCount);
        const auto meta = extract_metadata_features(timeline, profile, &graph, user, options);
        const auto timing = extract_timing_features(timeline, corpus.window_start, corpus.window_end);
        const auto network = extract_network_features(graph, user);
        fv.values.insert(fv.values.end(), meta.begin(), meta.end());
        fv.values.insert(fv.values.end(), timing.begin(), timing.end());
        fv.values.insert(fv.values.end(), network.begin(), network.end());
        for (double& v : fv.values) {
            if (!std::isfinite(v)) v = 0.0;
        }
        results[i] = std::move(fv);
    });

    std::map<std::string, FeatureVector> out;
    for (std::size_t i = 0; i < users.size(); ++i) out[users[i]] = std::move(results[i]);
    return out;
}

}  // namespace sieve
