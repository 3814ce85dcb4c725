#include "sieve/corpus.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>

#include <json.hpp>

namespace sieve {

using nlohmann::json;

namespace {

std::int64_t require_count(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw SchemaViolation(std::string("missing or non-integer field: ") + key);
    const std::int64_t v = j[key].get<std::int64_t>();
    if (v < 0) throw SchemaViolation(std::string("negative count: ") + key);
    return v;
}

std::string require_string(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw SchemaViolation(std::string("missing or non-string field: ") + key);
    return j[key].get<std::string>();
}

}  // namespace

EventRecord parse_event_line(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error&) {
        throw MalformedLine("event line is not valid JSON");
    }
    if (!j.is_object()) throw MalformedLine("event line is not a JSON object");

    EventRecord e;
    e.event_id = require_string(j, "event_id");
    e.author_id = require_string(j, "author_id");
    if (!j.contains("timestamp") || !j["timestamp"].is_number_integer())
        throw SchemaViolation("missing or non-integer field: timestamp");
    e.timestamp = j["timestamp"].get<std::int64_t>();
    e.hashtag_count = require_count(j, "hashtag_count");
    e.url_count = require_count(j, "url_count");
    e.retweet_count_field = require_count(j, "retweet_count_field");
    e.author_followers = require_count(j, "author_followers");
    e.author_friends = require_count(j, "author_friends");
    if (!j.contains("mention_ids") || !j["mention_ids"].is_array())
        throw SchemaViolation("missing or non-array field: mention_ids");
    for (const auto& m : j["mention_ids"]) {
        if (!m.is_string()) throw SchemaViolation("mention_ids entry is not a string");
        e.mention_ids.push_back(m.get<std::string>());
    }
    if (!j.contains("is_retweet") || !j["is_retweet"].is_boolean())
        throw SchemaViolation("missing or non-boolean field: is_retweet");
    e.is_retweet = j["is_retweet"].get<bool>();
    if (j.contains("retweeted_author_id") && !j["retweeted_author_id"].is_null())
        e.retweeted_author_id = require_string(j, "retweeted_author_id");
    if (j.contains("in_reply_to_id") && !j["in_reply_to_id"].is_null())
        e.in_reply_to_id = require_string(j, "in_reply_to_id");

    if (e.is_retweet != e.retweeted_author_id.has_value())
        throw SchemaViolation("is_retweet inconsistent with retweeted_author_id");
    return e;
}

std::string serialize_event(const EventRecord& e) {
    json j;
    j["event_id"] = e.event_id;
    j["author_id"] = e.author_id;
    j["timestamp"] = e.timestamp;
    j["hashtag_count"] = e.hashtag_count;
    j["mention_ids"] = e.mention_ids;
    j["url_count"] = e.url_count;
    j["is_retweet"] = e.is_retweet;
    if (e.retweeted_author_id) j["retweeted_author_id"] = *e.retweeted_author_id;
    j["retweet_count_field"] = e.retweet_count_field;
    if (e.in_reply_to_id) j["in_reply_to_id"] = *e.in_reply_to_id;
    j["author_followers"] = e.author_followers;
    j["author_friends"] = e.author_friends;
    return j.dump();
}

UserProfile parse_profile_line(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error&) {
        throw MalformedLine("profile line is not valid JSON");
    }
    if (!j.is_object()) throw MalformedLine("profile line is not a JSON object");
    UserProfile p;
    p.user_id = require_string(j, "user_id");
    p.followers_count = require_count(j, "followers_count");
    p.friends_count = require_count(j, "friends_count");
    p.favourites_count = require_count(j, "favourites_count");
    p.profile_desc_url_count = require_count(j, "profile_desc_url_count");
    p.username_length = require_count(j, "username_length");
    if (p.username_length < 1) throw SchemaViolation("username_length must be >= 1");
    return p;
}

std::string serialize_profile(const UserProfile& p) {
    json j;
    j["user_id"] = p.user_id;
    j["followers_count"] = p.followers_count;
    j["friends_count"] = p.friends_count;
    j["favourites_count"] = p.favourites_count;
    j["profile_desc_url_count"] = p.profile_desc_url_count;
    j["username_length"] = p.username_length;
    return j.dump();
}

void Corpus::finalize() {
    std::sort(events.begin(), events.end(), [](const EventRecord& a, const EventRecord& b) {
        if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
        return a.event_id < b.event_id;
    });
    by_author_.clear();
    for (std::size_t i = 0; i < events.size(); ++i) by_author_[events[i].author_id].push_back(i);
}

std::vector<EventRecord> Corpus::user_timeline(const std::string& user_id) const {
    std::vector<EventRecord> out;
    auto it = by_author_.find(user_id);
    if (it == by_author_.end()) return out;
    out.reserve(it->second.size());
    for (std::size_t i : it->second) {
        touch(events[i]);
        out.push_back(events[i]);
    }
    return out;
}

void Corpus::for_each_event(const std::function<void(const EventRecord&)>& fn) const {
    for (const EventRecord& e : events) {
        touch(e);
        fn(e);
    }
}

const UserProfile* Corpus::find_profile(const std::string& user_id) const {
    auto it = profiles.find(user_id);
    return it == profiles.end() ? nullptr : &it->second;
}

Corpus load_corpus(const std::string& events_path, const std::string& profiles_path,
                   const std::string& labels_path, LoadReport* report) {
    Corpus corpus;
    LoadReport local;

    std::ifstream events_in(events_path);
    if (!events_in) throw IoFailure("cannot open events file: " + events_path);
    std::string line;
    while (std::getline(events_in, line)) {
        if (line.empty()) continue;
        try {
            corpus.events.push_back(parse_event_line(line));
        } catch (const Error&) {
            ++local.lines_dropped;
        }
    }
    if (corpus.events.empty()) throw EmptyCorpus("no valid events in " + events_path);
    local.events_loaded = corpus.events.size();

    std::ifstream profiles_in(profiles_path);
    if (!profiles_in) throw IoFailure("cannot open profiles file: " + profiles_path);
    while (std::getline(profiles_in, line)) {
        if (line.empty()) continue;
        try {
            UserProfile p = parse_profile_line(line);
            corpus.profiles[p.user_id] = std::move(p);
        } catch (const Error&) {
            ++local.lines_dropped;
        }
    }
    local.profiles_loaded = corpus.profiles.size();

    std::ifstream labels_in(labels_path);
    if (!labels_in) throw IoFailure("cannot open labels file: " + labels_path);
    while (std::getline(labels_in, line)) {
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error&) {
            ++local.lines_dropped;
            continue;
        }
        if (!j.is_object() || !j.contains("user_id") || !j.contains("class")) {
            ++local.lines_dropped;
            continue;
        }
        const std::string user = j["user_id"].get<std::string>();
        const std::string cls = j["class"].get<std::string>();
        if (cls == "extremist") {
            corpus.extremist_ids.insert(user);
        } else if (cls == "regular") {
            corpus.regular_ids.insert(user);
        } else {
            ++local.lines_dropped;
        }
    }
    for (const std::string& u : corpus.extremist_ids) {
        if (corpus.regular_ids.count(u))
            throw LabelOverlap("user labeled both extremist and regular: " + u);
    }

    corpus.finalize();
    std::int64_t min_ts = corpus.events.front().timestamp;
    std::int64_t max_ts = corpus.events.back().timestamp;
    corpus.window_start = floor_to_month(min_ts);
    corpus.window_end = ceil_to_month(max_ts + 1);
    if (report) *report = local;
    return corpus;
}

Corpus slice_by_time(const Corpus& corpus, std::int64_t t_start, std::int64_t t_end) {
    if (t_start >= t_end) throw InvalidWindow("slice start must precede end");
    Corpus out;
    out.profiles = corpus.profiles;
    out.extremist_ids = corpus.extremist_ids;
    out.regular_ids = corpus.regular_ids;
    out.window_start = t_start;
    out.window_end = t_end;
    out.access_log_ = corpus.access_log_;
    for (const EventRecord& e : corpus.events) {
        if (e.timestamp >= t_start && e.timestamp < t_end) out.events.push_back(e);
    }
    out.finalize();
    return out;
}

std::int64_t floor_to_month(std::int64_t t) {
    using namespace std::chrono;
    const sys_days day = floor<days>(sys_seconds{seconds{t}});
    const year_month_day ymd{day};
    const sys_days month_start{year_month_day{ymd.year(), ymd.month(), std::chrono::day{1}}};
    return duration_cast<seconds>(month_start.time_since_epoch()).count();
}

std::int64_t ceil_to_month(std::int64_t t) {
    const std::int64_t fl = floor_to_month(t);
    return fl == t ? t : add_months(fl, 1);
}

std::int64_t add_months(std::int64_t month_start, int count) {
    using namespace std::chrono;
    const sys_days day = floor<days>(sys_seconds{seconds{month_start}});
    year_month_day ymd{day};
    ymd += months{count};
    const sys_days out{year_month_day{ymd.year(), ymd.month(), std::chrono::day{1}}};
    return duration_cast<seconds>(out.time_since_epoch()).count();
}

std::vector<std::int64_t> month_boundaries(std::int64_t start, std::int64_t end) {
    if (start >= end) throw InvalidWindow("month_boundaries requires start < end");
    std::vector<std::int64_t> bounds;
    std::int64_t b = floor_to_month(start);
    bounds.push_back(b);
    while (b < end) {
        b = add_months(b, 1);
        bounds.push_back(b);
    }
    return bounds;
}

}  // namespace sieve
