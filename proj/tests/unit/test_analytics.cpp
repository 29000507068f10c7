#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "analytics/categories.hpp"
#include "analytics/merge.hpp"
#include "analytics/stats.hpp"
#include "common/error.hpp"
#include "common/text.hpp"
#include "telemetry/sink.hpp"
#include "support.hpp"

using namespace tutor;
using namespace tutor::analytics;
using telemetry::InteractionRecord;
using namespace std::chrono_literals;

namespace {

const SysTime kT0 = parse_rfc3339("2025-01-10T10:00:00Z");

InteractionRecord rec(std::string thread, std::chrono::seconds offset, std::string text, std::string id = {}) {
    InteractionRecord r;
    r.thread_id = std::move(thread);
    r.timestamp = kT0 + offset;
    r.user_message = std::move(text);
    r.interaction_id = id.empty() ? r.thread_id + "-" + std::to_string(offset.count()) : std::move(id);
    r.awareness = "none";
    return r;
}

// Groups per thread: a new group starts whenever the gap exceeds the window.
std::size_t oracle_count(const std::vector<InteractionRecord>& sorted, std::chrono::microseconds window) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (i == 0 || sorted[i].thread_id != sorted[i - 1].thread_id ||
            sorted[i].timestamp - sorted[i - 1].timestamp > window)
            ++n;
    return n;
}

MergedFile file_of(std::vector<MergedInteraction> items) {
    MergedFile f;
    f.interactions = std::move(items);
    return f;
}

MergedInteraction mi(std::string id, std::string awareness = "none") {
    MergedInteraction m;
    m.merged_id = std::move(id);
    m.awareness = std::move(awareness);
    return m;
}

}  // namespace

TEST_CASE("two prompts 30 s apart merge; 120 s apart do not") {
    std::vector<InteractionRecord> close{rec("a", 0s, "How do I", "i1"), rec("a", 30s, "sort a list?", "i2")};
    auto m = merge_interactions(close, 60s);
    REQUIRE(m.size() == 1);
    CHECK(m[0].constituents == std::vector<std::string>{"i1", "i2"});
    CHECK(m[0].combined_text == "How do I\nsort a list?");
    CHECK(m[0].merged_id == "m-i1");
    CHECK(m[0].first_timestamp == kT0);

    std::vector<InteractionRecord> apart{rec("a", 0s, "x"), rec("a", 120s, "y")};
    CHECK(merge_interactions(apart, 60s).size() == 2);

    std::vector<InteractionRecord> boundary{rec("a", 0s, "x"), rec("a", 60s, "y")};
    CHECK(merge_interactions(boundary, 60s).size() == 1);
}

TEST_CASE("merging chains transitively and never crosses threads") {
    std::vector<InteractionRecord> r{rec("a", 0s, "1"), rec("a", 50s, "2"), rec("a", 100s, "3"), rec("b", 101s, "4")};
    auto m = merge_interactions(r, 60s);
    REQUIRE(m.size() == 2);
    CHECK(m[0].constituents.size() == 3);
    CHECK(m[1].thread_id == "b");
}

TEST_CASE("unsorted input is rejected") {
    std::vector<InteractionRecord> r{rec("a", 10s, "x"), rec("a", 0s, "y")};
    try {
        merge_interactions(r, 60s);
        FAIL("expected UnsortedInput");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnsortedInput);
    }
    std::vector<InteractionRecord> threads{rec("b", 0s, "x"), rec("a", 5s, "y")};
    CHECK_THROWS_AS(merge_interactions(threads, 60s), Error);
}

TEST_CASE("merge is a partition, identity at zero and monotone in the window") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<InteractionRecord> r;
        const int threads = std::uniform_int_distribution<int>(1, 6)(rng);
        for (int t = 0; t < threads; ++t) {
            std::chrono::seconds at{0};
            const int n = std::uniform_int_distribution<int>(1, 20)(rng);
            for (int i = 0; i < n; ++i) {
                at += std::chrono::seconds(std::uniform_int_distribution<int>(1, 240)(rng));
                r.push_back(rec("t" + std::to_string(t), at, "q"));
            }
        }
        std::set<std::string> all_ids;
        for (const auto& x : r) all_ids.insert(x.interaction_id);

        std::size_t prev = r.size() + 1;
        for (auto w : {0s, 1s, 30s, 60s, 120s, 500s}) {
            const auto m = merge_interactions(r, w);
            CHECK(m.size() == oracle_count(r, w));
            CHECK(m.size() <= prev);
            prev = m.size();

            std::multiset<std::string> seen;
            for (const auto& g : m)
                for (const auto& id : g.constituents) seen.insert(id);
            CHECK(seen.size() == r.size());
            CHECK(std::set<std::string>(seen.begin(), seen.end()) == all_ids);
        }
        CHECK(merge_interactions(r, 0s).size() == r.size());
    }
}

TEST_CASE("log records are filtered and sorted before merging") {
    std::vector<nlohmann::json> lines;
    lines.push_back(telemetry::to_json(rec("b", 5s, "later thread")));
    lines.push_back(telemetry::to_json(rec("a", 9s, "second")));
    lines.push_back(telemetry::to_json(rec("a", 1s, "first")));
    lines.push_back({{"record_type", "config_changed"}, {"timestamp", "2025-01-10T10:00:02Z"}});
    auto failure = rec("a", 3s, "failed");
    failure.record_type = "provider_failure";
    lines.push_back(telemetry::to_json(failure));

    const auto r = interaction_records(lines);
    REQUIRE(r.size() == 3);
    CHECK(r[0].user_message == "first");
    CHECK(r[1].user_message == "second");
    CHECK(r[2].thread_id == "b");
}

TEST_CASE("merged files round-trip") {
    std::vector<InteractionRecord> r{rec("a", 0s, "x", "i1"), rec("a", 10s, "y", "i2"), rec("b", 0s, "z", "i3")};
    MergedFile f;
    f.window_seconds = 60;
    f.interactions = merge_interactions(r, 60s);
    testsupport::TempDir dir;
    save_merged(f, dir.str("m.json"));
    const auto back = load_merged(dir.str("m.json"));
    CHECK(back.window_seconds == 60);
    CHECK(back.interactions == f.interactions);
}

TEST_CASE("category names") {
    CHECK(kAllCategories.size() == 12);
    std::set<std::string_view> names;
    for (auto c : kAllCategories) {
        names.insert(category_name(c));
        CHECK(parse_category(category_name(c)) == c);
    }
    CHECK(names.size() == 12);
    CHECK(parse_category("explain concept") == QuestionCategory::ExplainConcept);
    CHECK(parse_category("code_only") == QuestionCategory::CodeOnly);
    CHECK(parse_category("HOW-TO") == QuestionCategory::HowTo);
    try {
        parse_category("Banana");
        FAIL("expected UnknownCategory");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownCategory);
    }
}

TEST_CASE("tagging: set, overwrite, reject unknowns, persist") {
    const auto f = file_of({mi("m-x"), mi("m-y")});
    TagTable tags;
    tag(tags, f, "m-x", "ExplainConcept");
    CHECK(tags.at("m-x") == QuestionCategory::ExplainConcept);
    tag(tags, f, "m-x", "HowTo");
    CHECK(tags.at("m-x") == QuestionCategory::HowTo);
    tag(tags, f, "m-x", "HowTo");
    CHECK(tags.size() == 1);

    try {
        tag(tags, f, "m-x", "Banana");
        FAIL("expected UnknownCategory");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownCategory);
    }
    try {
        tag(tags, f, "m-zzz", "HowTo");
        FAIL("expected UnknownMergedId");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownMergedId);
    }
    CHECK(tags.at("m-x") == QuestionCategory::HowTo);

    testsupport::TempDir dir;
    tag(tags, f, "m-y", "Misc");
    save_tags(tags, dir.str("tags.json"));
    CHECK(load_tags(dir.str("tags.json")) == tags);
    CHECK(text::read_file(dir.str("tags.json")).find("\"m-x\"") < text::read_file(dir.str("tags.json")).find("\"m-y\""));
    CHECK(load_tags(dir.str("missing.json")).empty());
}

TEST_CASE("stats examples") {
    const auto empty = category_stats({}, {});
    CHECK(empty.rows.empty());
    CHECK(empty.total == 0);
    CHECK(render_stats(empty, StatsFormat::Csv) == "category,count\ntotal,0\n");

    std::vector<MergedInteraction> ten;
    TagTable tags;
    for (int i = 0; i < 10; ++i) {
        ten.push_back(mi("m-" + std::to_string(i)));
        tags["m-" + std::to_string(i)] = QuestionCategory::Unrelated;
    }
    const auto s = category_stats(file_of(ten), tags);
    REQUIRE(s.rows.size() == 1);
    CHECK(s.rows[0].category == QuestionCategory::Unrelated);
    CHECK(s.rows[0].count == 10);
    CHECK(s.total == 10);
}

TEST_CASE("stats ordering, untagged reporting and the awareness filter") {
    const auto f = file_of({mi("a"), mi("b"), mi("c"), mi("d", "task"), mi("e"), mi("f")});
    TagTable tags{{"a", QuestionCategory::HowTo},
                  {"b", QuestionCategory::GiveExample},
                  {"c", QuestionCategory::ExplainCode},
                  {"d", QuestionCategory::HowTo},
                  {"e", QuestionCategory::Implement}};
    const auto s = category_stats(f, tags);
    REQUIRE(s.rows.size() == 4);
    CHECK(s.rows[0].category == QuestionCategory::HowTo);
    CHECK(s.rows[1].category == QuestionCategory::ExplainCode);  // ties alphabetical
    CHECK(s.rows[2].category == QuestionCategory::GiveExample);
    CHECK(s.rows[3].category == QuestionCategory::Implement);
    CHECK(s.total == 5);
    CHECK(s.untagged == 1);

    const auto only_none = category_stats(f, tags, std::string("none"));
    CHECK(only_none.total == 4);
    CHECK(only_none.rows[0].count == 1);

    auto row = [](std::string name, std::string count) {
        return name + std::string(21 - name.size() + 6 - count.size(), ' ') + count + "\n";
    };
    CHECK(render_stats(s, StatsFormat::Table) == row("category", "count") + row("HowTo", "2") +
                                                      row("ExplainCode", "1") + row("GiveExample", "1") +
                                                      row("Implement", "1") + row("total", "5") + row("untagged", "1"));
    const auto j = nlohmann::json::parse(render_stats(s, StatsFormat::Json));
    CHECK(j["total"] == 5);
    CHECK(j["rows"][0] == nlohmann::json{{"category", "HowTo"}, {"count", 2}});
    CHECK(parse_stats_format("csv") == StatsFormat::Csv);
    CHECK_THROWS_AS(parse_stats_format("xml"), Error);
}

TEST_CASE("shipped fixture: merged file matches a fresh merge and tags cover it") {
    const std::string dir = TUTOR_FIXTURES "/analytics";
    const auto records = interaction_records(telemetry::read_log_lines(dir + "/log"));
    CHECK(records.size() == 354);
    const auto merged = merge_interactions(records, 60s);
    CHECK(merged.size() == oracle_count(records, 60s));
    const auto shipped = load_merged(dir + "/merged.json");
    CHECK(shipped.interactions == merged);

    const auto tags = load_tags(dir + "/tags.json");
    const auto s = category_stats(shipped, tags);
    CHECK(s.total == 304);
    CHECK(s.untagged == 0);
    std::map<std::string, std::size_t> got;
    for (const auto& r : s.rows) got[std::string(category_name(r.category))] = r.count;
    const std::map<std::string, std::size_t> expected{
        {"ExplainConcept", 61}, {"Implement", 47},         {"HowTo", 38},    {"CodeCorrectness", 34},
        {"CodeOnly", 31},       {"Unrelated", 23},         {"ExplainTaskDetail", 19}, {"FollowUp", 17},
        {"GiveExample", 13},    {"ExplainCode", 13},       {"CourseMaterial", 5},     {"Misc", 3}};
    CHECK(got == expected);
}
