#include "sieve/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>

#include <json.hpp>

#include "sieve/errors.hpp"
#include "sieve/rng.hpp"

namespace sieve {

namespace {

using json = nlohmann::ordered_json;

constexpr std::int64_t kOriginTs = 1420070400;  // 2015-01-01T00:00:00Z
constexpr double kContactRate = 0.35;           // fraction of regulars an extremist contacts
constexpr std::uint64_t kProfileStreamBase = 0x8000000000ULL;
constexpr std::uint64_t kPlantStreamBase = 0x9000000000ULL;

void validate(const SynthSpec& spec) {
    if (spec.n_extremist == 0 || spec.n_regular == 0) {
        throw InvalidSpec("both populations must be nonempty");
    }
    if (spec.months == 0) throw InvalidSpec("months must be positive");
    if (spec.separation < 0.0 || spec.separation > 1.0) {
        throw InvalidSpec("separation must lie in [0, 1]");
    }
    if (spec.adoption_rate < 0.0 || spec.adoption_rate > 1.0 || spec.reciprocity_rate < 0.0 ||
        spec.reciprocity_rate > 1.0) {
        throw InvalidSpec("rates must lie in [0, 1]");
    }
    for (std::size_t f : spec.informative_features) {
        if (f >= kFeatureCount) throw InvalidSpec("informative feature index out of range");
    }
}

bool knob_informative(const SynthSpec& spec, std::initializer_list<std::size_t> mapped) {
    for (std::size_t f : spec.informative_features) {
        for (std::size_t m : mapped) {
            if (f == m) return true;
        }
    }
    return false;
}

std::string pad_id(char prefix, std::size_t index, std::size_t width) {
    std::string digits = std::to_string(index);
    std::string out(1, prefix);
    if (digits.size() < width) out.append(width - digits.size(), '0');
    out += digits;
    return out;
}

std::int64_t positive_round(double v) {
    return v <= 0.0 ? 0 : static_cast<std::int64_t>(std::llround(v));
}

/// Event plus a per-author generation sequence number; ids are assigned
/// once each author's stream is complete.
struct PendingEvent {
    EventRecord event;
    std::size_t seq = 0;
};

}  // namespace

SynthParams derive_params(const SynthSpec& spec, bool extremist) {
    SynthParams p;
    const double s = extremist ? spec.separation : 0.0;
    if (knob_informative(spec, {2, 18, 19, 20, 21, 22, 23})) {
        p.daily_rate *= 1.0 + 1.5 * s;
    }
    if (knob_informative(spec, {4, 24, 25, 26, 27, 48, 49, 50, 51})) {
        p.retweet_prob = std::min(0.85, p.retweet_prob * (1.0 + 1.6 * s));
    }
    if (knob_informative(spec, {5, 9, 10, 28, 29, 30, 31})) {
        p.mention_prob = std::min(0.9, p.mention_prob * (1.0 + 1.5 * s));
    }
    if (knob_informative(spec, {6})) p.hashtag_rate *= 1.0 + 2.5 * s;
    if (knob_informative(spec, {12, 13, 14, 15, 16})) p.url_rate *= 1.0 + 2.0 * s;
    if (knob_informative(spec, {7, 8})) p.rtcount_rate *= 1.0 + 3.0 * s;
    if (knob_informative(spec, {0, 32, 33, 34, 35, 40, 41, 42, 43})) {
        p.followers_log_mean += 1.5 * s;
    }
    if (knob_informative(spec, {1, 36, 37, 38, 39, 44, 45, 46, 47})) {
        p.friends_log_mean += 1.2 * s;
    }
    if (knob_informative(spec, {3})) p.favourites_rate *= 1.0 + 2.0 * s;
    if (knob_informative(spec, {11})) {
        p.profile_url_prob = std::min(1.0, p.profile_url_prob * (1.0 + 1.5 * s));
    }
    if (knob_informative(spec, {17})) p.username_extra = 6.0 * s;
    return p;
}

SynthResult synthesize(const SynthSpec& spec) {
    validate(spec);
    const std::int64_t window_start = kOriginTs;
    const std::int64_t window_end = add_months(kOriginTs, static_cast<int>(spec.months));
    const std::int64_t window_len = window_end - window_start;
    const std::int64_t days = window_len / 86400;

    const std::size_t id_width =
        std::max<std::size_t>(4, std::to_string(std::max(spec.n_extremist, spec.n_regular)).size());
    std::vector<std::string> extremists;
    std::vector<std::string> regulars;
    for (std::size_t i = 0; i < spec.n_extremist; ++i) extremists.push_back(pad_id('e', i, id_width));
    for (std::size_t i = 0; i < spec.n_regular; ++i) regulars.push_back(pad_id('r', i, id_width));

    const SynthParams ext_params = derive_params(spec, true);
    const SynthParams reg_params = derive_params(spec, false);

    // Planted roles are drawn from a dedicated stream up front so that the
    // organic event draw below cannot disturb them.
    std::set<std::string> adopters;
    std::set<std::string> contacted;
    std::set<std::string> reciprocators;
    {
        RngStream plant(spec.seed, kPlantStreamBase);
        for (std::size_t i = 0; i < regulars.size(); ++i) {
            const bool adopt = plant.bernoulli(spec.adoption_rate);
            const bool contact = plant.bernoulli(kContactRate);
            const bool reply = plant.bernoulli(spec.reciprocity_rate);
            if (adopt) adopters.insert(regulars[i]);
            if (contact) {
                contacted.insert(regulars[i]);
                if (reply) reciprocators.insert(regulars[i]);
            }
        }
    }
    struct UserState {
        std::string id;
        bool extremist = false;
        std::int64_t followers = 0;
        std::int64_t friends = 0;
        UserProfile profile;
        std::vector<PendingEvent> events;
    };
    std::vector<UserState> users(spec.n_extremist + spec.n_regular);

    // Follower, friend and activity scales come from one shared pool of
    // z-scores, dealt to each class through its own permutation. Organic
    // interactions are in-class, so in-edge profile summaries are drawn from
    // a class's own value pool weighted by author activity; sharing the
    // (profile, activity) triples keeps those summaries free of
    // finite-sample class fingerprints at separation 0, while independent
    // permutations avoid pairing any particular extremist with any
    // particular regular.
    const std::size_t n_max = std::max(spec.n_extremist, spec.n_regular);
    std::vector<double> z_followers(n_max);
    std::vector<double> z_friends(n_max);
    std::vector<double> z_rate(n_max);
    {
        RngStream zs(spec.seed, kProfileStreamBase);
        for (std::size_t i = 0; i < n_max; ++i) {
            z_followers[i] = zs.normal();
            z_friends[i] = zs.normal();
            z_rate[i] = zs.normal();
        }
    }
    auto deal_order = [&](std::size_t n, std::uint64_t stream) {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        RngStream rng(spec.seed, stream);
        for (std::size_t i = n; i > 1; --i) {
            std::swap(order[i - 1], order[rng.next_below(i)]);
        }
        return order;
    };
    const std::vector<std::size_t> ext_order = deal_order(spec.n_extremist, kProfileStreamBase + 1);
    const std::vector<std::size_t> reg_order = deal_order(spec.n_regular, kProfileStreamBase + 2);

    auto pick_other = [](RngStream& rng, const std::vector<std::string>& pool,
                         const std::string& self) -> const std::string* {
        if (pool.empty() || (pool.size() == 1 && pool.front() == self)) return nullptr;
        for (;;) {
            const std::string& cand = pool[rng.next_below(pool.size())];
            if (cand != self) return &cand;
        }
    };

    for (std::size_t u = 0; u < users.size(); ++u) {
        UserState& state = users[u];
        state.extremist = u < spec.n_extremist;
        const std::size_t within = state.extremist ? u : u - spec.n_extremist;
        state.id = state.extremist ? extremists[u] : regulars[within];
        const SynthParams& p = state.extremist ? ext_params : reg_params;
        const std::size_t deal = state.extremist ? ext_order[within] : reg_order[within];

        RngStream rng(spec.seed, u);
        state.followers = positive_round(
            std::exp(p.followers_log_mean + p.followers_log_sigma * z_followers[deal]));
        state.friends = positive_round(
            std::exp(p.friends_log_mean + p.friends_log_sigma * z_friends[deal]));
        state.profile.user_id = state.id;
        state.profile.followers_count = state.followers;
        state.profile.friends_count = state.friends;
        state.profile.favourites_count = static_cast<std::int64_t>(rng.poisson(p.favourites_rate));
        state.profile.profile_desc_url_count = rng.bernoulli(p.profile_url_prob) ? 1 : 0;
        state.profile.username_length = 5 + static_cast<std::int64_t>(rng.next_below(11));
        if (p.username_extra > 0.0) {
            state.profile.username_length += static_cast<std::int64_t>(rng.poisson(p.username_extra));
        }
        const double rate = p.daily_rate * std::exp(0.25 * z_rate[deal]);

        for (std::int64_t day = 0; day < days; ++day) {
            const std::uint64_t count = rng.poisson(rate);
            for (std::uint64_t j = 0; j < count; ++j) {
                PendingEvent pe;
                pe.seq = state.events.size();
                EventRecord& e = pe.event;
                e.author_id = state.id;
                e.timestamp = window_start + day * 86400 +
                              static_cast<std::int64_t>(rng.next_below(86400));
                e.hashtag_count = static_cast<std::int64_t>(rng.poisson(p.hashtag_rate));
                e.url_count = static_cast<std::int64_t>(rng.poisson(p.url_rate));
                e.retweet_count_field = static_cast<std::int64_t>(rng.poisson(p.rtcount_rate));
                e.author_followers = state.followers;
                e.author_friends = state.friends;

                if (rng.bernoulli(p.retweet_prob)) {
                    // Organic retweets stay inside the author's own class so
                    // that adoption labels remain exactly the planted set.
                    // Retweets are pure re-shares and carry no mention, so a
                    // retweet can never create a contact edge.
                    const std::string* target =
                        state.extremist ? pick_other(rng, extremists, state.id)
                                        : pick_other(rng, regulars, state.id);
                    if (target) {
                        e.is_retweet = true;
                        e.retweeted_author_id = *target;
                        state.events.push_back(std::move(pe));
                        continue;
                    }
                }
                if (rng.bernoulli(p.reply_prob)) {
                    const std::string* target =
                        state.extremist ? pick_other(rng, extremists, state.id)
                                        : pick_other(rng, regulars, state.id);
                    if (target) {
                        e.in_reply_to_id = *target;
                        e.mention_ids.push_back(*target);
                        state.events.push_back(std::move(pe));
                        continue;
                    }
                }
                if (rng.bernoulli(p.mention_prob)) {
                    // Mentions stay in-class as well: every cross-class edge
                    // in the corpus is planted, so contact and reciprocity
                    // ground truth is exactly the planted sets.
                    const std::string* target =
                        state.extremist ? pick_other(rng, extremists, state.id)
                                        : pick_other(rng, regulars, state.id);
                    if (target) e.mention_ids.push_back(*target);
                }
                state.events.push_back(std::move(pe));
            }
        }
    }

    auto user_index = [&](const std::string& id) -> std::size_t {
        if (id[0] == 'e') return static_cast<std::size_t>(std::stoull(id.substr(1)));
        return spec.n_extremist + static_cast<std::size_t>(std::stoull(id.substr(1)));
    };

    // Every planted event below is mirrored by a same-type decoy in the
    // opposite direction. The decoys are chosen so that no label rule can
    // ever match them (mention-free retweets, regular-authored mentions,
    // replies to already contacted users), which keeps planted volume from
    // giving either class a count signature at separation 0.

    // Planted adoption: each adopter retweets extremist content at least
    // once; each such retweet is mirrored by an extremist re-sharing some
    // regular's content.
    for (const std::string& id : adopters) {
        RngStream rng(spec.seed, kPlantStreamBase + 1 + user_index(id));
        UserState& state = users[user_index(id)];
        const std::uint64_t extra = rng.poisson(0.7);
        for (std::uint64_t i = 0; i < 1 + extra; ++i) {
            {
                PendingEvent pe;
                pe.seq = state.events.size();
                EventRecord& e = pe.event;
                e.author_id = id;
                e.timestamp = window_start + static_cast<std::int64_t>(rng.next_below(
                                                 static_cast<std::uint64_t>(window_len)));
                const std::string& target = extremists[rng.next_below(extremists.size())];
                e.is_retweet = true;
                e.retweeted_author_id = target;
                e.hashtag_count = static_cast<std::int64_t>(rng.poisson(reg_params.hashtag_rate));
                e.url_count = static_cast<std::int64_t>(rng.poisson(reg_params.url_rate));
                e.retweet_count_field =
                    static_cast<std::int64_t>(rng.poisson(reg_params.rtcount_rate));
                e.author_followers = state.followers;
                e.author_friends = state.friends;
                state.events.push_back(std::move(pe));
            }
            {
                UserState& dstate = users[user_index(extremists[rng.next_below(extremists.size())])];
                PendingEvent pe;
                pe.seq = dstate.events.size();
                EventRecord& e = pe.event;
                e.author_id = dstate.id;
                e.timestamp = window_start + static_cast<std::int64_t>(rng.next_below(
                                                 static_cast<std::uint64_t>(window_len)));
                e.is_retweet = true;
                e.retweeted_author_id = regulars[rng.next_below(regulars.size())];
                e.hashtag_count = static_cast<std::int64_t>(rng.poisson(ext_params.hashtag_rate));
                e.url_count = static_cast<std::int64_t>(rng.poisson(ext_params.url_rate));
                e.retweet_count_field =
                    static_cast<std::int64_t>(rng.poisson(ext_params.rtcount_rate));
                e.author_followers = dstate.followers;
                e.author_friends = dstate.friends;
                dstate.events.push_back(std::move(pe));
            }
        }
    }

    // Planted contact: one extremist mention per contacted user, early enough
    // to leave room for the reply; reciprocators answer 1 minute to 2 days
    // later, which always lands inside the window. Each contact is mirrored
    // by a regular mentioning some extremist, and each reciprocal reply by a
    // short follow-up reply from the contacting extremist.
    const std::int64_t contact_span = std::max<std::int64_t>(window_len - 3 * 86400, 1);
    for (const std::string& id : contacted) {
        RngStream rng(spec.seed, kPlantStreamBase + 2 + users.size() + user_index(id));
        const std::string& author = extremists[rng.next_below(extremists.size())];
        UserState& mstate = users[user_index(author)];
        const std::int64_t mention_ts =
            window_start + static_cast<std::int64_t>(
                               rng.next_below(static_cast<std::uint64_t>(contact_span)));
        {
            PendingEvent pe;
            pe.seq = mstate.events.size();
            EventRecord& e = pe.event;
            e.author_id = author;
            e.timestamp = mention_ts;
            e.mention_ids.push_back(id);
            e.hashtag_count = static_cast<std::int64_t>(rng.poisson(ext_params.hashtag_rate));
            e.url_count = static_cast<std::int64_t>(rng.poisson(ext_params.url_rate));
            e.retweet_count_field = static_cast<std::int64_t>(rng.poisson(ext_params.rtcount_rate));
            e.author_followers = mstate.followers;
            e.author_friends = mstate.friends;
            mstate.events.push_back(std::move(pe));
        }
        {
            UserState& dstate = users[user_index(regulars[rng.next_below(regulars.size())])];
            PendingEvent pe;
            pe.seq = dstate.events.size();
            EventRecord& e = pe.event;
            e.author_id = dstate.id;
            e.timestamp = window_start + static_cast<std::int64_t>(rng.next_below(
                                             static_cast<std::uint64_t>(contact_span)));
            e.mention_ids.push_back(extremists[rng.next_below(extremists.size())]);
            e.hashtag_count = static_cast<std::int64_t>(rng.poisson(reg_params.hashtag_rate));
            e.url_count = static_cast<std::int64_t>(rng.poisson(reg_params.url_rate));
            e.retweet_count_field = static_cast<std::int64_t>(rng.poisson(reg_params.rtcount_rate));
            e.author_followers = dstate.followers;
            e.author_friends = dstate.friends;
            dstate.events.push_back(std::move(pe));
        }
        if (reciprocators.contains(id)) {
            UserState& rstate = users[user_index(id)];
            const std::int64_t reply_ts =
                mention_ts + 60 + static_cast<std::int64_t>(rng.next_below(2 * 86400 - 60));
            {
                PendingEvent pe;
                pe.seq = rstate.events.size();
                EventRecord& e = pe.event;
                e.author_id = id;
                e.timestamp = reply_ts;
                e.in_reply_to_id = author;
                e.mention_ids.push_back(author);
                e.hashtag_count = static_cast<std::int64_t>(rng.poisson(reg_params.hashtag_rate));
                e.url_count = static_cast<std::int64_t>(rng.poisson(reg_params.url_rate));
                e.retweet_count_field =
                    static_cast<std::int64_t>(rng.poisson(reg_params.rtcount_rate));
                e.author_followers = rstate.followers;
                e.author_friends = rstate.friends;
                rstate.events.push_back(std::move(pe));
            }
            {
                PendingEvent pe;
                pe.seq = mstate.events.size();
                EventRecord& e = pe.event;
                e.author_id = author;
                e.timestamp = reply_ts + 60 + static_cast<std::int64_t>(rng.next_below(3600));
                e.in_reply_to_id = id;
                e.mention_ids.push_back(id);
                e.hashtag_count = static_cast<std::int64_t>(rng.poisson(ext_params.hashtag_rate));
                e.url_count = static_cast<std::int64_t>(rng.poisson(ext_params.url_rate));
                e.retweet_count_field =
                    static_cast<std::int64_t>(rng.poisson(ext_params.rtcount_rate));
                e.author_followers = mstate.followers;
                e.author_friends = mstate.friends;
                mstate.events.push_back(std::move(pe));
            }
        }
    }

    SynthResult result;
    result.truth.t2_positives = std::move(adopters);
    result.truth.t3_contacted = std::move(contacted);
    result.truth.t3_positives = std::move(reciprocators);

    Corpus& corpus = result.corpus;
    corpus.window_start = window_start;
    corpus.window_end = window_end;
    for (UserState& state : users) {
        std::stable_sort(state.events.begin(), state.events.end(),
                         [](const PendingEvent& a, const PendingEvent& b) {
                             return a.event.timestamp < b.event.timestamp;
                         });
        const std::size_t seq_width = std::to_string(std::max<std::size_t>(state.events.size(), 1)).size();
        for (std::size_t i = 0; i < state.events.size(); ++i) {
            EventRecord e = std::move(state.events[i].event);
            std::string digits = std::to_string(i);
            e.event_id = state.id + "_e" + std::string(std::max<std::size_t>(seq_width, 6) - digits.size(), '0') + digits;
            corpus.events.push_back(std::move(e));
        }
        corpus.profiles[state.id] = state.profile;
        (state.extremist ? corpus.extremist_ids : corpus.regular_ids).insert(state.id);
    }
    corpus.finalize();
    return result;
}

void write_corpus_files(const SynthResult& result, const SynthSpec& spec,
                        const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const Corpus& corpus = result.corpus;

    std::vector<std::string> ids;
    ids.insert(ids.end(), corpus.extremist_ids.begin(), corpus.extremist_ids.end());
    ids.insert(ids.end(), corpus.regular_ids.begin(), corpus.regular_ids.end());
    std::sort(ids.begin(), ids.end());

    {
        std::ofstream out(fs::path(out_dir) / "events.jsonl", std::ios::binary);
        if (!out) throw IoFailure("cannot write events.jsonl under " + out_dir);
        for (const std::string& id : ids) {
            for (const EventRecord& e : corpus.user_timeline(id)) {
                out << serialize_event(e) << '\n';
            }
        }
    }
    {
        std::ofstream out(fs::path(out_dir) / "profiles.jsonl", std::ios::binary);
        if (!out) throw IoFailure("cannot write profiles.jsonl under " + out_dir);
        for (const std::string& id : ids) {
            out << serialize_profile(corpus.profiles.at(id)) << '\n';
        }
    }
    {
        std::ofstream out(fs::path(out_dir) / "labels.jsonl", std::ios::binary);
        if (!out) throw IoFailure("cannot write labels.jsonl under " + out_dir);
        for (const std::string& id : ids) {
            json j;
            j["user_id"] = id;
            j["class"] = corpus.extremist_ids.contains(id) ? "extremist" : "regular";
            out << j.dump() << '\n';
        }
    }
    {
        json truth;
        json spec_echo;
        spec_echo["n_extremist"] = spec.n_extremist;
        spec_echo["n_regular"] = spec.n_regular;
        spec_echo["months"] = spec.months;
        spec_echo["separation"] = spec.separation;
        spec_echo["adoption_rate"] = spec.adoption_rate;
        spec_echo["reciprocity_rate"] = spec.reciprocity_rate;
        spec_echo["informative_features"] = spec.informative_features;
        spec_echo["seed"] = spec.seed;
        truth["spec"] = std::move(spec_echo);
        auto params_json = [](const SynthParams& p) {
            json j;
            j["daily_rate"] = p.daily_rate;
            j["retweet_prob"] = p.retweet_prob;
            j["mention_prob"] = p.mention_prob;
            j["reply_prob"] = p.reply_prob;
            j["hashtag_rate"] = p.hashtag_rate;
            j["url_rate"] = p.url_rate;
            j["rtcount_rate"] = p.rtcount_rate;
            j["followers_log_mean"] = p.followers_log_mean;
            j["followers_log_sigma"] = p.followers_log_sigma;
            j["friends_log_mean"] = p.friends_log_mean;
            j["friends_log_sigma"] = p.friends_log_sigma;
            j["favourites_rate"] = p.favourites_rate;
            j["profile_url_prob"] = p.profile_url_prob;
            j["username_extra"] = p.username_extra;
            return j;
        };
        truth["params_extremist"] = params_json(derive_params(spec, true));
        truth["params_regular"] = params_json(derive_params(spec, false));
        truth["t2_positives"] = result.truth.t2_positives;
        truth["t3_contacted"] = result.truth.t3_contacted;
        truth["t3_positives"] = result.truth.t3_positives;
        std::ofstream out(fs::path(out_dir) / "ground_truth.json", std::ios::binary);
        if (!out) throw IoFailure("cannot write ground_truth.json under " + out_dir);
        out << truth.dump(2) << '\n';
    }
}

SynthResult generate_corpus(const SynthSpec& spec, const std::string& out_dir) {
    SynthResult result = synthesize(spec);
    write_corpus_files(result, spec, out_dir);
    return result;
}

Dataset planted_matrix(std::size_t n_per_class, std::size_t d,
                       const std::vector<std::size_t>& informative, double shift,
                       std::uint64_t seed) {
    if (n_per_class == 0 || d == 0) throw InvalidSpec("planted matrix needs rows and columns");
    for (std::size_t f : informative) {
        if (f >= d) throw InvalidSpec("informative column out of range");
    }
    std::vector<bool> is_informative(d, false);
    for (std::size_t f : informative) is_informative[f] = true;

    Dataset data;
    const std::size_t n = 2 * n_per_class;
    data.X = Matrix(n, d);
    data.window_id = "planted";
    RngStream rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const int label = static_cast<int>(i % 2);
        for (std::size_t j = 0; j < d; ++j) {
            double x = rng.normal();
            if (label == 1 && is_informative[j]) x += shift;
            data.X(i, j) = x;
        }
        data.y.push_back(label);
        std::string digits = std::to_string(i);
        std::string id = "p";
        if (digits.size() < 5) id.append(5 - digits.size(), '0');
        id += digits;
        data.user_ids.push_back(std::move(id));
    }
    return data;
}

double verify_null(const Corpus& corpus, const EvalConfig& config, const ModelSpec& spec) {
    Dataset data = to_dataset(make_instances(corpus, Task::kT1));
    return kfold_cv(data, spec, config).mean.auc;
}

}  // namespace sieve
