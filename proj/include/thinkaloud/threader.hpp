#pragma once
// Incremental grouping of notes into threads by affinity and recency.

#include "thinkaloud/model.hpp"
#include "thinkaloud/oracle.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace thinkaloud {

struct ThreadParams {
    double min_affinity = 0.2;
    Millis window_ms = 300000;
    // Number of most recent notes whose text forms a thread's context.
    std::size_t context_notes = 3;
};

struct ThreadCandidate {
    ThreadId id;
    Millis t_last = 0;
    std::string context;
};

// Best thread for a note, or nullopt when none is close enough in both
// affinity and time. Ties go to the most recently active thread.
std::optional<ThreadId> choose_thread(const std::string& note_text, Millis note_t_start,
                                      const std::vector<ThreadCandidate>& candidates,
                                      SemanticOracle& oracle, const ThreadParams& params);

using NoteMap = std::map<NoteId, TalkNote>;

class ThreadIndex {
public:
    const std::vector<TalkThread>& threads() const { return threads_; }
    const TalkThread* find(const ThreadId& id) const;
    std::optional<ThreadId> thread_of(const NoteId& note) const;

    std::vector<ThreadCandidate> candidates(const NoteMap& notes, std::size_t context_notes) const;

    // Appends to `thread` or, when absent, opens a new thread titled `title`.
    const TalkThread& add(const TalkNote& note, const std::optional<ThreadId>& thread,
                          const std::string& title);
    // Refreshes t_last after a member grew through a merge.
    const TalkThread& touch(const ThreadId& id, Millis t_last);

private:
    TalkThread& get(const ThreadId& id);

    std::vector<TalkThread> threads_;
    std::map<NoteId, ThreadId> membership_;
};

// Thread title for a new thread started by `note`.
std::string thread_title(const TalkNote& note);

// Places `note` into `index` (existing thread or a new one) and returns the
// thread id. The note must be enriched or failed.
ThreadId assign_thread(const TalkNote& note, ThreadIndex& index, const NoteMap& notes,
                       SemanticOracle& oracle, const ThreadParams& params = {});

// Notes whose labels intersect `labels` (all notes for an empty filter),
// grouped by thread in thread order, thread-internal order preserved.
std::vector<TalkNote> filter_notes(const std::vector<TalkThread>& threads, const NoteMap& notes,
                                   const LabelSet& labels);

struct ThreadGroup {
    TalkThread thread;
    std::vector<TalkNote> notes;
};

std::vector<ThreadGroup> filter_grouped(const std::vector<TalkThread>& threads, const NoteMap& notes,
                                        const LabelSet& labels);

}  // namespace thinkaloud
