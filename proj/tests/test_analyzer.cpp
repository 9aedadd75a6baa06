#include "thinkaloud/analyzer.hpp"

#include <gtest/gtest.h>

#include "support.hpp"

#include <regex>

using namespace thinkaloud;
using namespace thinkaloud::analysis;
using thinkaloud::testing::fixture;

namespace {

SessionEvent ev(std::uint64_t seq, Millis t, EventKind k, nlohmann::ordered_json p = nlohmann::ordered_json::object()) {
    return {seq, t, k, std::move(p)};
}

}  // namespace

TEST(WordCount, Examples) {
    EXPECT_EQ(word_count("don't stop now!"), 3u);
    EXPECT_EQ(word_count("... --- 123"), 0u);
    EXPECT_EQ(word_count(""), 0u);
    EXPECT_DOUBLE_EQ(wpm("don't stop now!", 1.0), 3.0);
    EXPECT_DOUBLE_EQ(wpm("", 2.0), 0.0);
    EXPECT_DOUBLE_EQ(wpm("one two three four", 2.0), 2.0);
}

TEST(WordCount, Tokens) {
    EXPECT_EQ(word_count("I'm sure it's fine, we'll see"), 6u);
    EXPECT_EQ(word_count("2nd floor, 3 rooms"), 3u);
    EXPECT_EQ(word_count("state-of-the-art"), 4u);
    // Apostrophes outside the contraction table split the token.
    EXPECT_EQ(word_count("rock'n'roll"), 3u);
    EXPECT_EQ(word_count("'quoted' words"), 2u);
    EXPECT_EQ(word_count("DON'T"), 1u);
}

TEST(WordCount, ContractionTableIsDistinctAndLowercase) {
    std::set<std::string_view> s(kContractions.begin(), kContractions.end());
    EXPECT_EQ(s.size(), kContractions.size());
    for (auto c : kContractions) {
        EXPECT_NE(c.find('\''), std::string_view::npos) << c;
        EXPECT_EQ(word_count(c), 1u) << c;
    }
}

TEST(WordCount, WhitespaceInvariance) {
    EXPECT_EQ(word_count("  the   window\t\tis\nsmall "), word_count("the window is small"));
}

TEST(Wpm, NonPositiveDurationThrows) {
    EXPECT_THROW(wpm("a", 0), std::invalid_argument);
    EXPECT_THROW(wpm("a", -1), std::invalid_argument);
}

TEST(SessionStats, EmptyAndPointerOnly) {
    EXPECT_EQ(session_stats({}), SessionStats{});
    nlohmann::ordered_json p;
    p["x"] = 1;
    const auto s = session_stats({ev(1, 0, EventKind::Config), ev(2, 500, EventKind::PointerIn, p),
                                  ev(3, 900, EventKind::PointerIn, p)});
    SessionStats expected;
    expected.duration = 900;
    EXPECT_EQ(s, expected);
}

TEST(SessionStats, P06Fixture) {
    const auto s = session_stats(read_log_file(fixture("p06_counts.stats.jsonl")));
    EXPECT_EQ(s.notes_created, 55u);
    EXPECT_EQ(s.notes_merged, 27u);
    EXPECT_EQ(s.notes_checked, 4u);
    EXPECT_EQ(s.tips_shown, 73u);
    EXPECT_EQ(s.tip_responses, 24u);
    EXPECT_EQ(s.duration, 15 * 60000 + 22000);
    EXPECT_EQ(classify_engagement(s), Engagement::HeavyIntegrator);
}

TEST(SessionStats, CorruptLogReportsPosition) {
    try {
        read_log_file(fixture("does_not_exist.jsonl"));
        FAIL();
    } catch (const std::runtime_error&) {
    }
}

TEST(Engagement, LabeledExamples) {
    EXPECT_EQ(classify_engagement(11, 2), Engagement::NoteExplorer);
    EXPECT_EQ(classify_engagement(4, 24), Engagement::HeavyIntegrator);
    EXPECT_EQ(classify_engagement(1, 7), Engagement::TipDrivenElaborator);
    EXPECT_EQ(classify_engagement(0, 3), Engagement::DocumentationOnly);
    EXPECT_EQ(to_string(Engagement::TipDrivenElaborator), "TipDrivenElaborator");
}

TEST(Engagement, ThresholdsAreConfigurable) {
    EXPECT_EQ(classify_engagement(3, 0, {3, 7}), Engagement::NoteExplorer);
    EXPECT_EQ(classify_engagement(0, 5, {4, 5}), Engagement::TipDrivenElaborator);
}

TEST(Recap, Bands) {
    EXPECT_EQ(classify_recap(0, 0), RecapUse::Light);
    EXPECT_EQ(classify_recap(8, 4), RecapUse::Power);
    EXPECT_EQ(classify_recap(3, 1), RecapUse::Iterative);
    EXPECT_EQ(classify_recap(1, 1), RecapUse::Light);
    EXPECT_EQ(classify_recap(1, 3), RecapUse::Iterative);
    EXPECT_EQ(classify_recap(5, 3), RecapUse::Power);
    EXPECT_EQ(classify_recap(6, 0), RecapUse::Power);
    EXPECT_EQ(to_string(RecapUse::Light), "LightRecapUser");
}

TEST(Timeline, RowsAndSorting) {
    nlohmann::ordered_json n1, n2, tip;
    n1["id"] = "n1";
    n2["id"] = "n2";
    tip["id"] = "tip1";
    tip["text"] = "Why here?";
    const std::vector<SessionEvent> log = {
        ev(1, 0, EventKind::Config),
        ev(2, 5000, EventKind::NoteCreated, n2),
        ev(3, 1000, EventKind::NoteCreated, n1),
        ev(4, 4000, EventKind::TipShown, tip),
        ev(5, 6000, EventKind::NoteEnriched, n1),
    };
    const auto rows = timeline(log);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].t, 1000);
    EXPECT_EQ(rows[1].kind, "tip_shown");
    EXPECT_EQ(rows[1].detail, "tip1: Why here?");
    EXPECT_EQ(rows[2].detail, "n2");
}

TEST(Timeline, CsvQuotingAndEmptyLog) {
    EXPECT_EQ(timeline_csv({}), "t,event_kind,detail\n");
    nlohmann::ordered_json tip;
    tip["id"] = "tip1";
    tip["text"] = "Windows, \"big\" ones?";
    const auto csv = timeline_csv({ev(1, 10, EventKind::TipShown, tip)});
    EXPECT_EQ(csv, "t,event_kind,detail\n10,tip_shown,\"tip1: Windows, \"\"big\"\" ones?\"\n");
}

TEST(Transcript, FinalFragmentsOnly) {
    auto e = thinkaloud::testing::make_engine();
    play(*e, Script().say("the window", 0, 1000).say("is small", 2000, 3000), 5000);
    EXPECT_EQ(final_transcript(e->events()), "the window is small");
}
