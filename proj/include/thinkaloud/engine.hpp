#pragma once
// One session's annotation engine.
//
// The engine is a single-threaded state machine driven by three inputs:
// client messages, the passage of session time (ticks on a fixed grid) and
// the completion of background jobs. Every observable effect is appended to
// the event log through the sink, in one total order. With the
// deterministic oracle and inline jobs the log is a pure function of the
// input events and their times, which is what replay relies on.

#include "thinkaloud/chunker.hpp"
#include "thinkaloud/events.hpp"
#include "thinkaloud/note_pipeline.hpp"
#include "thinkaloud/oracle.hpp"
#include "thinkaloud/protocol.hpp"
#include "thinkaloud/reminders.hpp"
#include "thinkaloud/rules.hpp"
#include "thinkaloud/threader.hpp"
#include "thinkaloud/tips.hpp"
#include "thinkaloud/trace.hpp"

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

namespace thinkaloud {

// Runs oracle-heavy work. `work` may run on any thread; the completion it
// returns must run on the engine's owning thread.
class JobSink {
public:
    using Completion = std::function<void()>;
    using Work = std::function<Completion()>;

    virtual ~JobSink() = default;
    virtual void submit(Work work) = 0;
};

class InlineJobs final : public JobSink {
public:
    void submit(Work work) override { work()(); }
};

class Engine {
public:
    using EventSink = std::function<void(const SessionEvent&)>;

    // `jobs` defaults to inline execution and must outlive the engine.
    Engine(SessionConfig config, std::shared_ptr<SemanticOracle> oracle, const RuleConfig& rules,
           EventSink sink = {}, JobSink* jobs = nullptr, RetryPolicy retry = {});

    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    // Logs the config event. Call once before anything else.
    void start();

    // Runs every tick on the grid up to and including t.
    void advance_to(Millis t);

    // Ticks up to t, then validates and applies the message. Invalid input
    // throws ProtocolError and leaves no trace in the log.
    void handle(const ClientMessage& msg, Millis t);

    // Flushes buffered speech and refuses further input.
    void close(Millis t);

    Millis now() const { return now_; }
    bool closed() const { return closed_; }
    bool started() const { return seq_ > 0; }
    // No note pipeline job queued or in flight.
    bool idle() const { return !pipeline_busy_ && pipeline_queue_.empty(); }

    const SessionConfig& config() const { return config_; }
    const std::vector<SessionEvent>& events() const { return events_; }

    const NoteMap& live_notes() const { return live_; }
    // Live notes in creation order.
    std::vector<TalkNote> live_notes_ordered() const;
    const NoteMap& pending_notes() const { return pending_; }
    const std::set<NoteId>& retired_notes() const { return retired_; }
    const ThreadIndex& threads() const { return threads_; }
    const TipManager& tips() const { return tips_; }
    const ReminderManager& reminders() const { return reminders_; }
    const TraceStore& traces() const { return traces_; }
    const Chunker& chunker() const { return chunker_; }

    std::vector<ThreadGroup> query(const LabelSet& labels) const;

private:
    struct PipelineJob {
        TalkNote note;
        std::vector<Utterance> utterances;
        std::optional<TalkNote> previous;
        std::vector<Utterance> previous_utterances;
        std::vector<ThreadCandidate> candidates;
    };

    struct PipelineResult {
        TalkNote note;
        std::optional<TalkNote> merged;
        std::optional<ThreadId> thread;
    };

    void emit(EventKind kind, ojson payload);
    void tick(Millis t);

    void on_fragment(const TranscriptFragment& f);
    void on_pointer(const PointerSample& s);
    void on_tip_ack(const TipId& id);
    void validate(const ClientMessage& msg) const;

    void promote(PromotedSegment seg);
    void attribute_responses(const TalkNote& note);
    void pump_pipeline();
    PipelineResult run_pipeline(const PipelineJob& job) const;
    void apply_pipeline(PipelineResult result);

    void generate_tips(Millis t);
    void show_tip(const TalkTip& tip, bool nudge);

    View view_at(Millis t) const;
    std::string transcript_since(Millis from, Millis to) const;
    std::optional<NoteId> previous_live() const;

    SessionConfig config_;
    std::shared_ptr<SemanticOracle> oracle_;
    EventSink sink_;
    InlineJobs inline_jobs_;
    JobSink* jobs_;
    RetryPolicy retry_;

    Chunker chunker_;
    TraceStore traces_;
    ThreadIndex threads_;
    TipManager tips_;
    ReminderManager reminders_;

    std::vector<SessionEvent> events_;
    std::uint64_t seq_ = 0;
    Millis now_ = 0;
    Millis next_tick_;
    bool closed_ = false;

    std::vector<TranscriptFragment> finals_;
    std::optional<Millis> last_speech_;
    std::vector<std::pair<Millis, View>> views_;

    std::size_t note_counter_ = 0;
    NoteMap live_;
    NoteMap pending_;
    std::set<NoteId> retired_;
    std::vector<NoteId> live_order_;
    // Every created note with its start time, in creation order.
    std::vector<std::pair<NoteId, Millis>> created_;
    std::map<NoteId, std::vector<Utterance>> utterances_;

    std::deque<NoteId> pipeline_queue_;
    bool pipeline_busy_ = false;
};

}  // namespace thinkaloud
