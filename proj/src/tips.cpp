#include "thinkaloud/tips.hpp"

#include <algorithm>

namespace thinkaloud {

TipManager::TipManager(TipParams params, text::WordSet stopwords, std::vector<std::string> nudge_prompts)
    : params_(params), stopwords_(std::move(stopwords)), nudge_prompts_(std::move(nudge_prompts)) {}

TipId TipManager::next_id() { return TipId("tip" + std::to_string(++counter_)); }

std::set<std::string> TipManager::used_texts() const {
    std::set<std::string> out;
    for (const auto& t : pool_) out.insert(t.text);
    for (const auto& t : shown_) out.insert(t.text);
    return out;
}

std::vector<TalkTip> TipManager::add_candidates(const std::vector<TipDraft>& drafts, Millis now) {
    std::vector<TalkTip> added;
    std::set<TipCategory> seen;
    auto used = used_texts();
    for (const auto& d : drafts) {
        const auto body = text::trim(d.text);
        if (body.empty() || text::char_count(body) > kMaxTipText) continue;
        if (seen.contains(d.category) || used.contains(body)) continue;
        seen.insert(d.category);
        used.insert(body);
        TalkTip tip{next_id(), d.category, body, now, std::nullopt, false};
        pool_.push_back(tip);
        added.push_back(std::move(tip));
        if (added.size() == 3) break;
    }
    while (pool_.size() > params_.pool_cap) pool_.erase(pool_.begin());
    return added;
}

std::vector<TalkTip> TipManager::generate_candidates(const std::string& recent_transcript,
                                                     const std::string& brief, Millis now,
                                                     SemanticOracle& oracle) {
    if (text::trim(recent_transcript).empty()) return {};
    auto drafts = oracle.tip_candidates(recent_transcript, brief, used_texts());
    if (!drafts) return {};
    return add_candidates(*drafts, now);
}

bool TipManager::rate_ok(Millis now) const {
    return !last_shown_ || now - *last_shown_ >= params_.min_gap_ms;
}

TalkTip& TipManager::show(TalkTip tip, Millis now) {
    tip.shown_t = now;
    displayed_ = tip.id;
    last_shown_ = now;
    shown_.push_back(std::move(tip));
    return shown_.back();
}

std::optional<TalkTip> TipManager::gate(const std::string& current_window, Millis now,
                                        SemanticOracle& oracle) {
    if (displayed_ || !rate_ok(now) || pool_.empty()) return std::nullopt;
    std::vector<TipDraft> drafts;
    drafts.reserve(pool_.size());
    for (const auto& t : pool_) drafts.push_back({t.category, t.text});
    const auto pick = oracle.tip_gate(drafts, current_window);
    if (!pick || !*pick || **pick >= pool_.size()) return std::nullopt;
    TalkTip tip = pool_[**pick];
    pool_.erase(pool_.begin() + static_cast<std::ptrdiff_t>(**pick));
    return show(std::move(tip), now);
}

std::optional<TalkTip> TipManager::pause_nudge(Millis now, Millis t_last_speech) {
    if (displayed_ || !rate_ok(now) || nudged_this_silence_) return std::nullopt;
    if (now - t_last_speech <= params_.nudge_after_ms || nudge_prompts_.empty()) return std::nullopt;
    nudged_this_silence_ = true;
    TalkTip tip{next_id(), TipCategory::ProbingQuestion,
                nudge_prompts_[nudges_++ % nudge_prompts_.size()], now, std::nullopt, false};
    return show(std::move(tip), now);
}

std::optional<TipId> TipManager::expire(Millis now) {
    if (!displayed_) return std::nullopt;
    const auto& tip = *std::find_if(shown_.begin(), shown_.end(), [&](const TalkTip& t) { return t.id == *displayed_; });
    if (now - *tip.shown_t < params_.display_ms) return std::nullopt;
    auto id = *displayed_;
    displayed_.reset();
    return id;
}

void TipManager::note_speech() { nudged_this_silence_ = false; }

std::vector<TipId> TipManager::responders(Millis note_t_start, const std::string& note_text) const {
    std::vector<TipId> out;
    const auto words = text::content_word_set(note_text, stopwords_);
    for (const auto& tip : shown_) {
        if (tip.responded) continue;
        const Millis dt = note_t_start - *tip.shown_t;
        if (dt < 0 || dt > params_.response_window_ms) continue;
        if (acked_.contains(tip.id) || text::overlap(text::content_word_set(tip.text, stopwords_), words) >= 1) {
            out.push_back(tip.id);
        }
    }
    return out;
}

TalkTip TipManager::record_response(const TipId& id, const NoteId&) {
    auto it = std::find_if(shown_.begin(), shown_.end(), [&](const TalkTip& t) { return t.id == id; });
    if (it == shown_.end()) throw UnknownTipError("unknown tip '" + id.value + "'");
    it->responded = true;
    return *it;
}

void TipManager::acknowledge(const TipId& id) {
    auto it = std::find_if(shown_.begin(), shown_.end(), [&](const TalkTip& t) { return t.id == id; });
    if (it == shown_.end()) throw UnknownTipError("unknown tip '" + id.value + "'");
    acked_.insert(id);
}

}  // namespace thinkaloud
