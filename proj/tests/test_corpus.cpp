#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>

#include "fixture_corpus.hpp"
#include "sieve/corpus.hpp"

using namespace sieve;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("sieve_corpus_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name, const std::string& content) const {
        const std::string p = (path / name).string();
        std::ofstream out(p, std::ios::binary);
        out << content;
        return p;
    }
};

const char* kGoodEvent =
    R"({"event_id":"a1","author_id":"u1","timestamp":1421498096,"hashtag_count":2,)"
    R"("mention_ids":["u2"],"url_count":1,"is_retweet":false,"retweet_count_field":3,)"
    R"("author_followers":10,"author_friends":20})";

}  // namespace

TEST_CASE("event line round-trips through parse and serialize") {
    EventRecord e = parse_event_line(kGoodEvent);
    CHECK(e.event_id == "a1");
    CHECK(e.author_id == "u1");
    CHECK(e.timestamp == 1421498096);
    CHECK(e.hashtag_count == 2);
    CHECK(e.mention_ids == std::vector<std::string>{"u2"});
    CHECK(e.url_count == 1);
    CHECK_FALSE(e.is_retweet);
    CHECK_FALSE(e.retweeted_author_id.has_value());
    CHECK(e.retweet_count_field == 3);
    CHECK(e.author_followers == 10);
    CHECK(e.author_friends == 20);

    EventRecord again = parse_event_line(serialize_event(e));
    CHECK(again == e);
}

TEST_CASE("retweet and reply fields round-trip") {
    EventRecord e = testfix::make_event("x", "a", 5, 0, {"b"}, 0, true, "c", 2, "d", 7, 8);
    EventRecord again = parse_event_line(serialize_event(e));
    CHECK(again == e);
    CHECK(again.retweeted_author_id == "c");
    CHECK(again.in_reply_to_id == "d");
}

TEST_CASE("event parse rejects bad input") {
    CHECK_THROWS_AS(parse_event_line("not json"), MalformedLine);
    CHECK_THROWS_AS(parse_event_line("[1,2,3]"), MalformedLine);
    // missing timestamp
    CHECK_THROWS_AS(
        parse_event_line(R"({"event_id":"a","author_id":"b","hashtag_count":0,)"
                         R"("mention_ids":[],"url_count":0,"is_retweet":false,)"
                         R"("retweet_count_field":0,"author_followers":0,"author_friends":0})"),
        SchemaViolation);
    // negative count
    CHECK_THROWS_AS(
        parse_event_line(R"({"event_id":"a","author_id":"b","timestamp":1,"hashtag_count":-1,)"
                         R"("mention_ids":[],"url_count":0,"is_retweet":false,)"
                         R"("retweet_count_field":0,"author_followers":0,"author_friends":0})"),
        SchemaViolation);
    // retweet flag without the retweeted author
    CHECK_THROWS_AS(
        parse_event_line(R"({"event_id":"a","author_id":"b","timestamp":1,"hashtag_count":0,)"
                         R"("mention_ids":[],"url_count":0,"is_retweet":true,)"
                         R"("retweet_count_field":0,"author_followers":0,"author_friends":0})"),
        SchemaViolation);
    // retweeted author without the flag
    CHECK_THROWS_AS(
        parse_event_line(R"({"event_id":"a","author_id":"b","timestamp":1,"hashtag_count":0,)"
                         R"("mention_ids":[],"url_count":0,"is_retweet":false,)"
                         R"("retweeted_author_id":"c",)"
                         R"("retweet_count_field":0,"author_followers":0,"author_friends":0})"),
        SchemaViolation);
}

TEST_CASE("profile line round-trips and validates") {
    UserProfile p = parse_profile_line(
        R"({"user_id":"u1","followers_count":5,"friends_count":6,"favourites_count":7,)"
        R"("profile_desc_url_count":1,"username_length":9})");
    CHECK(p.user_id == "u1");
    CHECK(p.followers_count == 5);
    CHECK(parse_profile_line(serialize_profile(p)) == p);

    CHECK_THROWS_AS(parse_profile_line("{"), MalformedLine);
    CHECK_THROWS_AS(parse_profile_line(
                        R"({"user_id":"u","followers_count":1,"friends_count":1,)"
                        R"("favourites_count":1,"profile_desc_url_count":0,"username_length":0})"),
                    SchemaViolation);
}

TEST_CASE("load_corpus drops malformed lines, sorts, and widens the window to months") {
    TempDir dir;
    // Events deliberately out of order; one broken line in the middle.
    std::string events;
    events += R"({"event_id":"b","author_id":"u1","timestamp":1421498096,"hashtag_count":0,"mention_ids":[],"url_count":0,"is_retweet":false,"retweet_count_field":0,"author_followers":1,"author_friends":1})" "\n";
    events += "{broken\n";
    events += R"({"event_id":"a","author_id":"u2","timestamp":1421498096,"hashtag_count":0,"mention_ids":[],"url_count":0,"is_retweet":false,"retweet_count_field":0,"author_followers":1,"author_friends":1})" "\n";
    events += R"({"event_id":"c","author_id":"u1","timestamp":1420070400,"hashtag_count":0,"mention_ids":[],"url_count":0,"is_retweet":false,"retweet_count_field":0,"author_followers":1,"author_friends":1})" "\n";
    const std::string events_path = dir.file("events.jsonl", events);
    const std::string profiles_path = dir.file(
        "profiles.jsonl",
        R"({"user_id":"u1","followers_count":1,"friends_count":1,"favourites_count":0,"profile_desc_url_count":0,"username_length":2})" "\n");
    const std::string labels_path = dir.file(
        "labels.jsonl",
        R"({"user_id":"u1","class":"extremist"})" "\n"
        R"({"user_id":"u2","class":"regular"})" "\n");

    LoadReport report;
    Corpus corpus = load_corpus(events_path, profiles_path, labels_path, &report);
    CHECK(report.events_loaded == 3);
    CHECK(report.lines_dropped == 1);
    CHECK(report.profiles_loaded == 1);

    REQUIRE(corpus.events.size() == 3);
    CHECK(corpus.events[0].event_id == "c");  // earliest timestamp first
    CHECK(corpus.events[1].event_id == "a");  // same timestamp: id order
    CHECK(corpus.events[2].event_id == "b");

    // Window: [2015-01-01, 2015-02-01) per the month-arithmetic oracle.
    CHECK(corpus.window_start == 1420070400);
    CHECK(corpus.window_end == 1422748800);

    CHECK(corpus.extremist_ids.count("u1") == 1);
    CHECK(corpus.regular_ids.count("u2") == 1);
    CHECK(corpus.find_profile("u1") != nullptr);
    CHECK(corpus.find_profile("nobody") == nullptr);
}

TEST_CASE("load_corpus rejects empty corpora and overlapping labels") {
    TempDir dir;
    const std::string empty = dir.file("empty.jsonl", "\n");
    const std::string profiles = dir.file("p.jsonl", "");
    const std::string labels = dir.file("l.jsonl", R"({"user_id":"u","class":"regular"})" "\n");
    CHECK_THROWS_AS(load_corpus(empty, profiles, labels), EmptyCorpus);

    const std::string events = dir.file("e.jsonl", std::string(kGoodEvent) + "\n");
    const std::string both = dir.file(
        "both.jsonl",
        R"({"user_id":"u","class":"regular"})" "\n"
        R"({"user_id":"u","class":"extremist"})" "\n");
    CHECK_THROWS_AS(load_corpus(events, profiles, both), LabelOverlap);

    CHECK_THROWS_AS(load_corpus((dir.path / "missing.jsonl").string(), profiles, labels),
                    IoFailure);
}

TEST_CASE("slice_by_time keeps half-open bounds and shares labels") {
    Corpus corpus = testfix::fixture_corpus();
    Corpus slice = slice_by_time(corpus, 2000, 90000);
    REQUIRE(slice.events.size() == 3);  // e5@2000, e2@4000, e4@50000; e3@90000 excluded
    CHECK(slice.events.front().event_id == "e5");
    CHECK(slice.events.back().event_id == "e4");
    CHECK(slice.window_start == 2000);
    CHECK(slice.window_end == 90000);
    CHECK(slice.extremist_ids == corpus.extremist_ids);
    CHECK(slice.regular_ids == corpus.regular_ids);
    CHECK(slice.profiles.size() == corpus.profiles.size());

    CHECK_THROWS_AS(slice_by_time(corpus, 100, 100), InvalidWindow);
    CHECK_THROWS_AS(slice_by_time(corpus, 200, 100), InvalidWindow);
}

TEST_CASE("user_timeline is time ordered and absent users get empty timelines") {
    Corpus corpus = testfix::fixture_corpus();
    auto alice = corpus.user_timeline("alice");
    REQUIRE(alice.size() == 3);
    CHECK(alice[0].event_id == "e1");
    CHECK(alice[1].event_id == "e2");
    CHECK(alice[2].event_id == "e3");
    CHECK(corpus.user_timeline("ghost").empty());
}

TEST_CASE("access log records consumption but not slicing") {
    Corpus corpus = testfix::fixture_corpus();
    auto log = std::make_shared<EventAccessLog>();
    corpus.install_access_log(log);

    Corpus slice = slice_by_time(corpus, 0, 50000);
    CHECK(log->snapshot().empty());  // building a window reads nothing

    slice.for_each_event([](const EventRecord&) {});
    auto seen = log->snapshot();
    CHECK(seen.size() == 3);  // e1, e5, e2
    for (std::int64_t t : seen) CHECK(t < 50000);

    log->clear();
    corpus.user_timeline("bob");
    CHECK(log->snapshot().size() == 2);
}

// Frozen values from tests/oracle/month_bounds_oracle.py.
TEST_CASE("month arithmetic matches the datetime oracle") {
    CHECK(floor_to_month(1420070400) == 1420070400);  // already a boundary
    CHECK(ceil_to_month(1420070400) == 1420070400);
    CHECK(floor_to_month(1421498096) == 1420070400);  // 2015-01-17T12:34:56
    CHECK(ceil_to_month(1421498096) == 1422748800);
    CHECK(floor_to_month(1456790399) == 1454284800);  // leap-year February
    CHECK(ceil_to_month(1456790399) == 1456790400);
    CHECK(floor_to_month(1420070399) == 1417392000);  // year wrap, 2014-12-31
    CHECK(ceil_to_month(1420070399) == 1420070400);
    CHECK(floor_to_month(0) == 0);
    CHECK(ceil_to_month(0) == 0);

    CHECK(add_months(1420070400, 1) == 1422748800);
    CHECK(add_months(1420070400, 6) == 1435708800);
    CHECK(add_months(1417392000, 1) == 1420070400);

    const std::vector<std::int64_t> expected{1414800000, 1417392000, 1420070400,
                                             1422748800, 1425168000, 1427846400};
    CHECK(month_boundaries(1416034800, 1425258000) == expected);

    const std::vector<std::int64_t> aligned{1420070400, 1422748800, 1425168000, 1427846400,
                                            1430438400, 1433116800, 1435708800};
    CHECK(month_boundaries(1420070400, 1435708800) == aligned);

    CHECK_THROWS_AS(month_boundaries(5, 5), InvalidWindow);
}
