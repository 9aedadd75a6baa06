#include "thinkaloud/tips.hpp"

#include <gtest/gtest.h>

#include "support.hpp"

using namespace thinkaloud;
using namespace thinkaloud::testing;

namespace {

const std::string kGlare = "How to handle window glare issues?";

TipManager manager() { return TipManager(TipParams{}, rules().stopwords, rules().nudge_prompts); }

}  // namespace

TEST(Tips, WindowYieldsGlareTip) {
    auto m = manager();
    DeterministicOracle o(rules());
    const auto tips = m.generate_candidates("the window faces east", "daycare", 20000, o);
    ASSERT_FALSE(tips.empty());
    EXPECT_LE(tips.size(), 3u);
    EXPECT_TRUE(std::any_of(tips.begin(), tips.end(), [](const TalkTip& t) { return t.text == kGlare; }));
    std::set<TipCategory> cats;
    for (const auto& t : tips) EXPECT_TRUE(cats.insert(t.category).second);
}

TEST(Tips, EmptyTranscriptAndFailureYieldNothing) {
    auto m = manager();
    DeterministicOracle o(rules());
    EXPECT_TRUE(m.generate_candidates("  ", "daycare", 0, o).empty());
    FailingOracle f;
    EXPECT_TRUE(m.generate_candidates("the window", "daycare", 0, f).empty());
    EXPECT_TRUE(m.pool().empty());
}

TEST(Tips, CandidatesAreSanitized) {
    auto m = manager();
    const auto added = m.add_candidates({{TipCategory::NewIdea, std::string(81, 'x')},
                                         {TipCategory::NewIdea, "  first idea  "},
                                         {TipCategory::NewIdea, "second idea"},
                                         {TipCategory::PotentialIssue, "first idea"},
                                         {TipCategory::ProbingQuestion, "a question?"}},
                                        0);
    ASSERT_EQ(added.size(), 2u);
    EXPECT_EQ(added[0].text, "first idea");
    EXPECT_EQ(added[1].text, "a question?");
    // Repeats of pooled texts are ignored.
    EXPECT_TRUE(m.add_candidates({{TipCategory::NewIdea, "first idea"}}, 1).empty());
}

TEST(Tips, GateShowsMatchingCandidate) {
    auto m = manager();
    DeterministicOracle o(rules());
    m.add_candidates({{TipCategory::ProbingQuestion, kGlare}}, 0);
    const auto shown = m.gate("so much glare", 10000, o);
    ASSERT_TRUE(shown);
    EXPECT_EQ(shown->shown_t, 10000);
    EXPECT_TRUE(m.pool().empty());
    EXPECT_EQ(m.displayed(), shown->id);
}

TEST(Tips, GateRateLimit) {
    auto m = manager();
    DeterministicOracle o(rules());
    m.add_candidates({{TipCategory::ProbingQuestion, kGlare}, {TipCategory::NewIdea, "Add a window seat"}}, 0);
    ASSERT_TRUE(m.gate("glare", 0, o));
    m.expire(8000);
    EXPECT_FALSE(m.gate("window seat", 10000, o));
    EXPECT_FALSE(m.gate("window seat", 29999, o));
    EXPECT_TRUE(m.gate("window seat", 31000, o));
}

TEST(Tips, GateBlockedWhileDisplayed) {
    auto m = manager();
    DeterministicOracle o(rules());
    m.add_candidates({{TipCategory::ProbingQuestion, kGlare}, {TipCategory::NewIdea, "Add a window seat"}}, 0);
    ASSERT_TRUE(m.gate("glare", 0, o));
    EXPECT_FALSE(m.gate("window seat", 40000, o));
    EXPECT_EQ(m.expire(40000), m.shown()[0].id);
    EXPECT_TRUE(m.gate("window seat", 40000, o));
}

TEST(Tips, GateNeedsOverlap) {
    auto m = manager();
    DeterministicOracle o(rules());
    EXPECT_FALSE(m.gate("anything", 0, o));
    m.add_candidates({{TipCategory::ProbingQuestion, kGlare}}, 0);
    EXPECT_FALSE(m.gate("the stairs", 0, o));
}

TEST(Tips, ExpireAfterDisplayTime) {
    auto m = manager();
    DeterministicOracle o(rules());
    m.add_candidates({{TipCategory::ProbingQuestion, kGlare}}, 0);
    m.gate("glare", 1000, o);
    EXPECT_FALSE(m.expire(8999));
    EXPECT_TRUE(m.expire(9000));
    EXPECT_FALSE(m.displayed());
}

TEST(Tips, PauseNudge) {
    auto m = manager();
    EXPECT_FALSE(m.pause_nudge(5000, 0));
    EXPECT_FALSE(m.pause_nudge(12000, 0));
    const auto n = m.pause_nudge(13000, 0);
    ASSERT_TRUE(n);
    EXPECT_EQ(n->category, TipCategory::ProbingQuestion);
    EXPECT_EQ(n->text, rules().nudge_prompts[0]);
}

TEST(Tips, NudgeRespectsRateLimitAndSilence) {
    auto m = manager();
    DeterministicOracle o(rules());
    m.add_candidates({{TipCategory::ProbingQuestion, kGlare}}, 0);
    m.gate("glare", 10000, o);
    m.expire(18000);
    EXPECT_FALSE(m.pause_nudge(20000, 7000));
    ASSERT_TRUE(m.pause_nudge(40000, 7000));
    m.expire(48000);
    // Same silence: no second nudge until speech resumes.
    EXPECT_FALSE(m.pause_nudge(80000, 7000));
    m.note_speech();
    const auto again = m.pause_nudge(100000, 85000);
    ASSERT_TRUE(again);
    EXPECT_EQ(again->text, rules().nudge_prompts[1 % rules().nudge_prompts.size()]);
}

TEST(Tips, ResponseAttribution) {
    auto m = manager();
    DeterministicOracle o(rules());
    m.add_candidates({{TipCategory::ProbingQuestion, kGlare}}, 0);
    const auto tip = *m.gate("glare", 100000, o);
    // Shares no content word with the tip.
    EXPECT_TRUE(m.responders(108000, "external shutters could regulate temperature").empty());
    EXPECT_EQ(m.responders(108000, "the window could get a shade"), std::vector<TipId>{tip.id});
    EXPECT_TRUE(m.responders(131000, "the window could get a shade").empty());
    EXPECT_TRUE(m.responders(99000, "the window").empty());

    m.acknowledge(tip.id);
    EXPECT_EQ(m.responders(108000, "external shutters could regulate temperature"), std::vector<TipId>{tip.id});
    EXPECT_TRUE(m.record_response(tip.id, NoteId("n1")).responded);
    EXPECT_TRUE(m.responders(108000, "window").empty());
}

TEST(Tips, UnknownTips) {
    auto m = manager();
    EXPECT_THROW(m.record_response(TipId("nope"), NoteId("n1")), UnknownTipError);
    EXPECT_THROW(m.acknowledge(TipId("nope")), UnknownTipError);
}
