#include "thinkaloud/reminders.hpp"

#include <algorithm>

namespace thinkaloud {

bool ReminderManager::cooling_down(const NoteId& id, Millis now) const {
    auto it = cooldown_until_.find(id);
    return it != cooldown_until_.end() && now < it->second;
}

std::vector<TalkReminder> ReminderManager::find_related(const std::string& current_window,
                                                        const std::vector<NoteDigest>& prior_notes,
                                                        const std::string& brief, Millis now,
                                                        SemanticOracle& oracle) {
    if (prior_notes.empty()) return {};
    const auto ids = oracle.related_notes(current_window, prior_notes, brief);
    if (!ids) return {};
    std::vector<TalkReminder> out;
    for (const auto& id : *ids) {
        if (out.size() == params_.max_per_round) break;
        const bool known = std::any_of(prior_notes.begin(), prior_notes.end(),
                                       [&](const NoteDigest& d) { return d.id == id; });
        const bool dup = std::any_of(out.begin(), out.end(), [&](const TalkReminder& r) { return r.note_id == id; });
        if (!known || dup || cooling_down(id, now)) continue;
        TalkReminder r{id, now, now + params_.cooldown_ms};
        cooldown_until_[id] = r.cooldown_until;
        out.push_back(r);
    }
    history_.insert(history_.end(), out.begin(), out.end());
    visible_.insert(visible_.end(), out.begin(), out.end());
    return out;
}

std::vector<NoteId> ReminderManager::expire(Millis now) {
    std::vector<NoteId> out;
    auto keep = std::stable_partition(visible_.begin(), visible_.end(), [&](const TalkReminder& r) {
        return now - r.triggered_t < params_.display_ms;
    });
    for (auto it = keep; it != visible_.end(); ++it) out.push_back(it->note_id);
    visible_.erase(keep, visible_.end());
    return out;
}

}  // namespace thinkaloud
