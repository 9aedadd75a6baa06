#pragma once
// Resurfacing of earlier notes that relate to what the user is saying now.

#include "thinkaloud/model.hpp"
#include "thinkaloud/oracle.hpp"

#include <map>
#include <vector>

namespace thinkaloud {

struct ReminderParams {
    Millis every_ms = 15000;
    Millis cooldown_ms = 120000;
    Millis display_ms = 6000;
    std::size_t max_per_round = 2;
};

class ReminderManager {
public:
    explicit ReminderManager(ReminderParams params = {}) : params_(params) {}

    const ReminderParams& params() const { return params_; }

    // Up to max_per_round related notes not under cooldown; each one starts
    // a cooldown. An oracle failure yields nothing.
    std::vector<TalkReminder> find_related(const std::string& current_window,
                                           const std::vector<NoteDigest>& prior_notes,
                                           const std::string& brief, Millis now,
                                           SemanticOracle& oracle);

    // Reminders whose display time has elapsed, oldest first.
    std::vector<NoteId> expire(Millis now);

    bool cooling_down(const NoteId& id, Millis now) const;

    const std::vector<TalkReminder>& history() const { return history_; }

private:
    ReminderParams params_;
    std::vector<TalkReminder> history_;
    std::map<NoteId, Millis> cooldown_until_;
    std::vector<TalkReminder> visible_;
};

}  // namespace thinkaloud
