#include "thinkaloud/threader.hpp"

#include "thinkaloud/text.hpp"

#include <algorithm>
#include <stdexcept>

namespace thinkaloud {

std::optional<ThreadId> choose_thread(const std::string& note_text, Millis note_t_start,
                                      const std::vector<ThreadCandidate>& candidates,
                                      SemanticOracle& oracle, const ThreadParams& params) {
    const ThreadCandidate* best = nullptr;
    double best_score = -1;
    for (const auto& c : candidates) {
        if (note_t_start - c.t_last > params.window_ms) continue;
        const double score = oracle.thread_affinity(note_text, c.context).value_or(0.0);
        if (score < params.min_affinity) continue;
        if (!best || score > best_score || (score == best_score && c.t_last >= best->t_last)) {
            best = &c;
            best_score = score;
        }
    }
    if (!best) return std::nullopt;
    return best->id;
}

const TalkThread* ThreadIndex::find(const ThreadId& id) const {
    auto it = std::find_if(threads_.begin(), threads_.end(), [&](const TalkThread& t) { return t.id == id; });
    return it == threads_.end() ? nullptr : &*it;
}

TalkThread& ThreadIndex::get(const ThreadId& id) {
    auto it = std::find_if(threads_.begin(), threads_.end(), [&](const TalkThread& t) { return t.id == id; });
    if (it == threads_.end()) throw std::out_of_range("unknown thread '" + id.value + "'");
    return *it;
}

std::optional<ThreadId> ThreadIndex::thread_of(const NoteId& note) const {
    auto it = membership_.find(note);
    if (it == membership_.end()) return std::nullopt;
    return it->second;
}

std::vector<ThreadCandidate> ThreadIndex::candidates(const NoteMap& notes, std::size_t context_notes) const {
    std::vector<ThreadCandidate> out;
    out.reserve(threads_.size());
    for (const auto& t : threads_) {
        const std::size_t n = std::min(context_notes, t.note_ids.size());
        std::vector<std::string> parts;
        for (auto it = t.note_ids.end() - static_cast<std::ptrdiff_t>(n); it != t.note_ids.end(); ++it) {
            if (auto nit = notes.find(*it); nit != notes.end()) parts.push_back(nit->second.transcript);
        }
        out.push_back({t.id, t.t_last, text::join_words(parts)});
    }
    return out;
}

const TalkThread& ThreadIndex::add(const TalkNote& note, const std::optional<ThreadId>& thread,
                                   const std::string& title) {
    if (membership_.contains(note.id)) throw std::logic_error("note '" + note.id.value + "' already threaded");
    TalkThread* target = nullptr;
    if (thread) {
        target = &get(*thread);
    } else {
        threads_.push_back({ThreadId("th" + std::to_string(threads_.size() + 1)), title, {}, note.t_end});
        target = &threads_.back();
    }
    target->note_ids.push_back(note.id);
    target->t_last = std::max(target->t_last, note.t_end);
    membership_[note.id] = target->id;
    return *target;
}

const TalkThread& ThreadIndex::touch(const ThreadId& id, Millis t_last) {
    auto& t = get(id);
    t.t_last = std::max(t.t_last, t_last);
    return t;
}

std::string thread_title(const TalkNote& note) {
    if (note.summary && !note.summary->empty()) return *note.summary;
    return text::truncate_chars(note.transcript, 80);
}

ThreadId assign_thread(const TalkNote& note, ThreadIndex& index, const NoteMap& notes,
                       SemanticOracle& oracle, const ThreadParams& params) {
    if (note.enrichment_state == EnrichmentState::Pending) {
        throw std::logic_error("assign_thread requires an enriched or failed note");
    }
    const auto chosen = choose_thread(note.transcript, note.t_start,
                                      index.candidates(notes, params.context_notes), oracle, params);
    return index.add(note, chosen, thread_title(note)).id;
}

namespace {

bool passes(const TalkNote& note, const LabelSet& labels) {
    if (labels.empty()) return true;
    return std::any_of(note.labels.begin(), note.labels.end(), [&](ProcessLabel l) { return labels.contains(l); });
}

}  // namespace

std::vector<ThreadGroup> filter_grouped(const std::vector<TalkThread>& threads, const NoteMap& notes,
                                        const LabelSet& labels) {
    std::vector<ThreadGroup> out;
    for (const auto& t : threads) {
        ThreadGroup g{t, {}};
        for (const auto& id : t.note_ids) {
            auto it = notes.find(id);
            if (it != notes.end() && passes(it->second, labels)) g.notes.push_back(it->second);
        }
        if (!g.notes.empty()) out.push_back(std::move(g));
    }
    return out;
}

std::vector<TalkNote> filter_notes(const std::vector<TalkThread>& threads, const NoteMap& notes,
                                   const LabelSet& labels) {
    std::vector<TalkNote> out;
    for (auto& g : filter_grouped(threads, notes, labels)) {
        for (auto& n : g.notes) out.push_back(std::move(n));
    }
    return out;
}

}  // namespace thinkaloud
