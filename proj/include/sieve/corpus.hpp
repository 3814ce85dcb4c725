#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "sieve/errors.hpp"

namespace sieve {

/// One tweet-like event (post, retweet, mention, reply). Text is never
/// stored; hashtag/mention/URL counts arrive precomputed in the input.
struct EventRecord {
    std::string event_id;
    std::string author_id;
    std::int64_t timestamp = 0;  // seconds since epoch, UTC
    std::int64_t hashtag_count = 0;
    std::vector<std::string> mention_ids;
    std::int64_t url_count = 0;
    bool is_retweet = false;
    std::optional<std::string> retweeted_author_id;  // present iff is_retweet
    std::int64_t retweet_count_field = 0;            // platform-reported snapshot
    std::optional<std::string> in_reply_to_id;
    std::int64_t author_followers = 0;  // per-event snapshot
    std::int64_t author_friends = 0;

    bool operator==(const EventRecord&) const = default;
};

struct UserProfile {
    std::string user_id;
    std::int64_t followers_count = 0;
    std::int64_t friends_count = 0;
    std::int64_t favourites_count = 0;
    std::int64_t profile_desc_url_count = 0;
    std::int64_t username_length = 1;

    bool operator==(const UserProfile&) const = default;
};

/// Records every event timestamp consumed through Corpus accessors.
/// Installed only by tests that need to prove temporal hygiene.
class EventAccessLog {
public:
    void record(std::int64_t timestamp) {
        std::lock_guard<std::mutex> lock(mutex_);
        timestamps_.push_back(timestamp);
    }
    std::vector<std::int64_t> snapshot() const {
        std::lock_guard<std::mutex> lock(mutex_);
        return timestamps_;
    }
    void clear() {
        std::lock_guard<std::mutex> lock(mutex_);
        timestamps_.clear();
    }

private:
    mutable std::mutex mutex_;
    std::vector<std::int64_t> timestamps_;
};

/// Immutable after load; safe for concurrent reads. Events are sorted by
/// (timestamp, event_id) so every downstream computation sees a total order.
class Corpus {
public:
    std::vector<EventRecord> events;  // sorted by (timestamp, event_id)
    std::unordered_map<std::string, UserProfile> profiles;
    std::int64_t window_start = 0;
    std::int64_t window_end = 0;  // half-open [window_start, window_end)
    std::set<std::string> extremist_ids;
    std::set<std::string> regular_ids;

    std::int64_t window_length() const { return window_end - window_start; }

    /// All events authored by user_id, ascending timestamp. Empty if absent.
    std::vector<EventRecord> user_timeline(const std::string& user_id) const;

    /// Visits every event in timestamp order, touching the access log.
    void for_each_event(const std::function<void(const EventRecord&)>& fn) const;

    const UserProfile* find_profile(const std::string& user_id) const;

    /// Sorts events and rebuilds the per-user index. Call after edits in tests.
    void finalize();

    void install_access_log(std::shared_ptr<EventAccessLog> log) { access_log_ = std::move(log); }
    void touch(const EventRecord& e) const {
        if (access_log_) access_log_->record(e.timestamp);
    }

private:
    friend Corpus slice_by_time(const Corpus&, std::int64_t, std::int64_t);
    std::unordered_map<std::string, std::vector<std::size_t>> by_author_;
    std::shared_ptr<EventAccessLog> access_log_;  // shared with slices
};

/// Counts reported by load_corpus.
struct LoadReport {
    std::size_t events_loaded = 0;
    std::size_t lines_dropped = 0;
    std::size_t profiles_loaded = 0;
};

/// Parses one JSON-Lines event record. Unknown fields are ignored.
/// Throws MalformedLine for invalid JSON, SchemaViolation for missing or
/// inconsistent fields (negative counts, retweet flag vs retweeted author).
EventRecord parse_event_line(const std::string& line);

/// Serializes an event back to its JSON-Lines form (inverse of parse).
std::string serialize_event(const EventRecord& event);

UserProfile parse_profile_line(const std::string& line);
std::string serialize_profile(const UserProfile& profile);

/// Loads events/profiles/labels. Malformed event lines are dropped and
/// counted; the window is [min_ts, max_ts+1) widened to whole UTC calendar
/// months so that monthly slicing is well defined.
Corpus load_corpus(const std::string& events_path, const std::string& profiles_path,
                   const std::string& labels_path, LoadReport* report = nullptr);

/// Events with t_start <= timestamp < t_end; profiles and labels carried
/// over; window set to the slice bounds. Throws InvalidWindow if
/// t_start >= t_end.
Corpus slice_by_time(const Corpus& corpus, std::int64_t t_start, std::int64_t t_end);

/// Start of the UTC calendar month containing t.
std::int64_t floor_to_month(std::int64_t t);
/// Start of the first UTC calendar month at or after t.
std::int64_t ceil_to_month(std::int64_t t);
/// Start of the month `count` months after the month containing t.
std::int64_t add_months(std::int64_t month_start, int count);
/// Month boundaries b_0 < b_1 < ... covering [start, end): b_0 = floor(start),
/// last >= end. Always has at least two entries.
std::vector<std::int64_t> month_boundaries(std::int64_t start, std::int64_t end);

}  // namespace sieve
