#include "thinkaloud/engine.hpp"

#include <gtest/gtest.h>

#include "support.hpp"

using namespace thinkaloud;
using namespace thinkaloud::testing;

namespace {

std::vector<SessionEvent> of_kind(const std::vector<SessionEvent>& events, EventKind k) {
    std::vector<SessionEvent> out;
    for (const auto& e : events) {
        if (e.kind == k) out.push_back(e);
    }
    return out;
}

std::size_t notes_after_silence(Millis silence) {
    auto e = make_engine();
    play(*e, Script().say("the window", 0, 1000).say("the door", 1000 + silence, 2000 + silence), 30000);
    return count(e->events(), EventKind::NoteCreated);
}

}  // namespace

TEST(Engine, StartLogsConfigOnce) {
    auto e = make_engine();
    ASSERT_EQ(e->events().size(), 1u);
    EXPECT_EQ(e->events()[0].kind, EventKind::Config);
    EXPECT_EQ(e->events()[0].seq, 1u);
    EXPECT_EQ(e->events()[0].payload["mode"], "assisted");
}

TEST(Engine, PauseBoundary) {
    EXPECT_EQ(notes_after_silence(7900), 1u);
    EXPECT_EQ(notes_after_silence(8100), 2u);
}

TEST(Engine, OneFragmentThenSilencePromotesOnce) {
    auto e = make_engine();
    play(*e, Script().say("the window is too small", 0, 2000));
    e->advance_to(11000);
    ASSERT_EQ(count(e->events(), EventKind::NoteCreated), 1u);
    // Promotion happens on the first tick past the threshold.
    EXPECT_EQ(of_kind(e->events(), EventKind::NoteCreated)[0].t, 11000);
    EXPECT_EQ(count(e->events(), EventKind::NoteEnriched), 1u);
    EXPECT_EQ(count(e->events(), EventKind::ThreadAssigned), 1u);
    ASSERT_EQ(e->live_notes().size(), 1u);
    const auto& n = e->live_notes().begin()->second;
    EXPECT_EQ(n.transcript, "the window is too small");
    EXPECT_EQ(n.enrichment_state, EnrichmentState::Enriched);
    EXPECT_EQ(n.linked_elements, std::set<ElementId>{ElementId("e1")});
    EXPECT_FALSE(n.thread_id.empty());
    EXPECT_TRUE(e->idle());
}

TEST(Engine, NoteEventOrder) {
    auto e = make_engine();
    play(*e, Script().say("the window is too small", 0, 2000), 20000);
    std::vector<std::string> kinds;
    for (const auto& ev : e->events()) {
        if (!is_input(ev.kind) && ev.kind != EventKind::TalkText) kinds.emplace_back(to_string(ev.kind));
    }
    const std::vector<std::string> head(kinds.begin(), kinds.begin() + 5);
    EXPECT_EQ(head, (std::vector<std::string>{"talkviz", "note_created", "talkviz", "note_enriched", "thread_assigned"}));
}

TEST(Engine, TopicShiftMakesTwoNotesInTwoThreads) {
    auto e = make_engine();
    play(*e,
         Script()
             .say("the kitchen needs more light", 0, 2500)
             .say("okay now the bathroom layout", 3000, 5000),
         20000);
    ASSERT_EQ(count(e->events(), EventKind::NoteCreated), 2u);
    EXPECT_EQ(count(e->events(), EventKind::NoteMerged), 0u);
    EXPECT_EQ(e->threads().threads().size(), 2u);
}

TEST(Engine, ResumedThoughtMerges) {
    auto e = make_engine();
    play(*e,
         Script()
             .say("kitchen counter height", 0, 2000)
             .say("kitchen counter height again", 12000, 14000),
         40000);
    EXPECT_EQ(count(e->events(), EventKind::NoteCreated), 2u);
    ASSERT_EQ(count(e->events(), EventKind::NoteMerged), 1u);
    const auto merged = of_kind(e->events(), EventKind::NoteMerged)[0];
    EXPECT_EQ(merged.payload["into"], "n1");
    EXPECT_EQ(merged.payload["from"], "n2");
    ASSERT_EQ(e->live_notes().size(), 1u);
    EXPECT_EQ(e->live_notes().at(NoteId("n1")).transcript, "kitchen counter height kitchen counter height again");
    EXPECT_TRUE(e->retired_notes().contains(NoteId("n2")));
    ASSERT_EQ(e->threads().threads().size(), 1u);
    EXPECT_EQ(e->threads().threads()[0].note_ids, std::vector<NoteId>{NoteId("n1")});
    EXPECT_EQ(e->threads().threads()[0].t_last, 14000);
}

TEST(Engine, BaselineStreamsTextOnly) {
    auto e = make_engine(basic_config(Mode::Baseline));
    play(*e,
         Script()
             .say("the window is too small", 0, 2000)
             .glide(0, 0, 200, 200, 0, 5000)
             .say("okay now the laundry", 20000, 22000),
         120000);
    for (const auto& ev : e->events()) {
        EXPECT_TRUE(is_input(ev.kind) || ev.kind == EventKind::TalkText) << to_string(ev.kind);
    }
    EXPECT_EQ(count(e->events(), EventKind::TalkText), 4u);
    EXPECT_TRUE(e->live_notes().empty());
}

TEST(Engine, InvalidInputLeavesNoTrace) {
    auto e = make_engine();
    play(*e, Script().say("the window", 0, 1000));
    const auto before = e->events().size();
    EXPECT_THROW(e->handle(FragmentMsg{final_frag("late", 500, 1200)}, 1200), ProtocolError);
    EXPECT_THROW(e->handle(NoteCheckedMsg{NoteId("n9")}, 1200), ProtocolError);
    EXPECT_THROW(e->handle(TipAckMsg{TipId("tip9")}, 1200), ProtocolError);
    // Ticks up to 1200 run, but nothing at the grid point 1000 was due.
    EXPECT_EQ(e->events().size(), before);
}

TEST(Engine, ClosedSessionRefusesInput) {
    auto e = make_engine();
    play(*e, Script().say("final remark", 0, 1000), 2000);
    EXPECT_TRUE(e->closed());
    EXPECT_EQ(count(e->events(), EventKind::NoteCreated), 1u);
    EXPECT_THROW(e->handle(FragmentMsg{final_frag("more", 3000, 4000)}, 4000), ProtocolError);
    const auto n = e->events().size();
    e->close(5000);
    EXPECT_EQ(e->events().size(), n);
}

TEST(Engine, SeqAndTimeAreMonotone) {
    auto e = make_engine();
    play(*e,
         Script()
             .say("the window is too bright", 0, 2000)
             .glide(100, 100, 300, 300, 0, 3000)
             .say("what about the laundry", 15000, 17000)
             .say("the window needs shades", 40000, 42000),
         90000);
    for (std::size_t i = 1; i < e->events().size(); ++i) {
        EXPECT_EQ(e->events()[i].seq, e->events()[i - 1].seq + 1);
        EXPECT_GE(e->events()[i].t, e->events()[i - 1].t);
    }
}

TEST(Engine, SinkSeesEveryEvent) {
    std::vector<SessionEvent> seen;
    Engine e(basic_config(), rule_oracle(), rules(), [&](const SessionEvent& ev) { seen.push_back(ev); }, nullptr,
             RetryPolicy::no_wait());
    e.start();
    play(e, Script().say("the window", 0, 1000), 20000);
    ASSERT_EQ(seen.size(), e.events().size());
    for (std::size_t i = 0; i < seen.size(); ++i) EXPECT_EQ(to_jsonl(seen[i]), to_jsonl(e.events()[i]));
}

TEST(Engine, TipShownAndAnswered) {
    auto e = make_engine();
    play(*e,
         Script()
             .say("the window lets in a lot of light", 1000, 4000)
             .say("glare on the window in the morning", 5000, 9000)
             .say("maybe the window could get blinds", 32000, 35000),
         60000);
    const auto shown = of_kind(e->events(), EventKind::TipShown);
    ASSERT_FALSE(shown.empty());
    const auto& first = shown[0];
    EXPECT_EQ(first.payload["nudge"], false);
    EXPECT_LE(first.payload["text"].get<std::string>().size(), kMaxTipText);
    const auto responses = of_kind(e->events(), EventKind::TipResponse);
    ASSERT_FALSE(responses.empty());
    EXPECT_EQ(responses[0].payload["via"], "overlap");
}

TEST(Engine, SilenceTriggersOneNudge) {
    auto e = make_engine();
    play(*e, Script().say("the stairs", 0, 1000));
    e->advance_to(60000);
    const auto shown = of_kind(e->events(), EventKind::TipShown);
    ASSERT_EQ(shown.size(), 1u);
    EXPECT_EQ(shown[0].payload["nudge"], true);
    EXPECT_EQ(shown[0].t, 14000);
    EXPECT_EQ(count(e->events(), EventKind::TipDismissed), 1u);
}

TEST(Engine, AckLinksRecentNote) {
    auto e = make_engine();
    play(*e, Script().say("the stairs", 0, 1000));
    e->advance_to(14000);
    const auto tip = of_kind(e->events(), EventKind::TipShown).at(0).payload["id"].get<std::string>();
    // Unrelated speech: no shared content word with the nudge.
    play(*e, Script().say("zebra giraffe", 15000, 16000).ack(tip, 17000));
    e->advance_to(40000);
    const auto responses = of_kind(e->events(), EventKind::TipResponse);
    ASSERT_EQ(responses.size(), 1u);
    EXPECT_EQ(responses[0].payload["tip_id"], tip);
    EXPECT_EQ(responses[0].payload["via"], "ack");
}

TEST(Engine, RemindersResurfaceOlderNotes) {
    auto e = make_engine();
    play(*e,
         Script()
             .say("the bedroom wall and door", 0, 2000)
             .say("okay now the kitchen counter", 12000, 14000)
             .say("back to the bedroom wall", 50000, 52000),
         70000);
    const auto r = of_kind(e->events(), EventKind::ReminderShown);
    ASSERT_FALSE(r.empty());
    EXPECT_EQ(r[0].payload["note_id"], "n1");
    EXPECT_EQ(r[0].payload["cooldown_until"], r[0].t + 120000);
}

TEST(Engine, ViewChangeSetsAnchorView) {
    auto e = make_engine();
    play(*e,
         Script()
             .view(View::ThreeD, 0)
             .point(10, 20, 500, View::ThreeD)
             .say("this corner", 600, 1500),
         20000);
    const auto& n = e->live_notes().at(NoteId("n1"));
    EXPECT_EQ(n.anchor.view, View::ThreeD);
    EXPECT_EQ(n.anchor.x, 10);
    EXPECT_TRUE(n.anchor.z);
}

TEST(Engine, QueryGroupsByThread) {
    auto e = make_engine();
    play(*e,
         Script()
             .say("why is the nursery window so small?", 0, 2000)
             .say("okay now the laundry needs to move later", 3000, 6000),
         30000);
    const auto all = e->query({});
    std::size_t n = 0;
    for (const auto& g : all) n += g.notes.size();
    EXPECT_EQ(n, 2u);
    const auto q = e->query({ProcessLabel::Question});
    ASSERT_EQ(q.size(), 1u);
    EXPECT_EQ(q[0].notes.at(0).id, NoteId("n1"));
}

TEST(Engine, FailingOracleDegradesWithoutStalling) {
    auto oracle = std::make_shared<FailingOracle>();
    auto e = make_engine(basic_config(), oracle);
    play(*e, Script().say("move the laundry", 0, 1000).say("zebra crossing", 20000, 21000), 60000);
    EXPECT_EQ(count(e->events(), EventKind::NoteCreated), 2u);
    for (const auto& [id, n] : e->live_notes()) {
        EXPECT_EQ(n.enrichment_state, EnrichmentState::Failed);
        EXPECT_EQ(n.labels, LabelSet{ProcessLabel::Process});
    }
    EXPECT_EQ(e->live_notes().at(NoteId("n1")).linked_elements, std::set<ElementId>{ElementId("e2")});
    EXPECT_EQ(e->threads().threads().size(), 2u);
}

namespace {

// Holds jobs until released, standing in for a worker pool.
class DeferredJobs : public JobSink {
public:
    std::vector<Work> queued;
    void submit(Work work) override { queued.push_back(std::move(work)); }
    void run_all() {
        while (!queued.empty()) {
            auto w = std::move(queued.front());
            queued.erase(queued.begin());
            w()();
        }
    }
};

}  // namespace

TEST(Engine, PipelineIsSingleFlightAndOrdered) {
    DeferredJobs jobs;
    Engine e(basic_config(), rule_oracle(), rules(), {}, &jobs, RetryPolicy::no_wait());
    e.start();
    play(e,
         Script()
             .say("the kitchen needs more light", 0, 2500)
             .say("okay now the bathroom layout is cramped", 3000, 6000)
             .say("next the stairs and the railing height", 6500, 9000));
    e.advance_to(20000);
    EXPECT_EQ(count(e.events(), EventKind::NoteCreated), 3u);
    EXPECT_FALSE(e.idle());
    EXPECT_EQ(e.pending_notes().size(), 3u);
    std::size_t pipeline_jobs = 0;
    for (std::size_t i = 0; i < 10 && !e.idle(); ++i) {
        jobs.run_all();
        ++pipeline_jobs;
    }
    EXPECT_TRUE(e.idle());
    std::vector<std::string> enriched;
    for (const auto& ev : e.events()) {
        if (ev.kind == EventKind::NoteEnriched) enriched.push_back(ev.payload["id"]);
    }
    EXPECT_EQ(enriched, (std::vector<std::string>{"n1", "n2", "n3"}));
}
