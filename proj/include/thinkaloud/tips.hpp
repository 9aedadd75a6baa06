#pragma once
// Proactive tips: background candidate generation, display gating with a
// global rate limit, pause nudges and response attribution.

#include "thinkaloud/model.hpp"
#include "thinkaloud/oracle.hpp"
#include "thinkaloud/text.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace thinkaloud {

class UnknownTipError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

struct TipParams {
    Millis generate_every_ms = 20000;
    Millis gate_every_ms = 10000;
    Millis min_gap_ms = 30000;
    Millis display_ms = 8000;
    Millis nudge_after_ms = 12000;
    Millis response_window_ms = 30000;
    std::size_t pool_cap = 9;
};

class TipManager {
public:
    TipManager(TipParams params, text::WordSet stopwords, std::vector<std::string> nudge_prompts);

    const TipParams& params() const { return params_; }

    // Texts already pooled or shown; passed to the oracle to avoid repeats.
    std::set<std::string> used_texts() const;

    // Adds validated drafts to the pool; returns the tips actually added.
    std::vector<TalkTip> add_candidates(const std::vector<TipDraft>& drafts, Millis now);

    std::vector<TalkTip> generate_candidates(const std::string& recent_transcript,
                                             const std::string& brief, Millis now,
                                             SemanticOracle& oracle);

    // At most one tip, only when nothing is displayed and the last tip was
    // shown at least min_gap ago. The shown tip leaves the pool.
    std::optional<TalkTip> gate(const std::string& current_window, Millis now, SemanticOracle& oracle);

    // One nudge per silence: speech must resume before the next one.
    std::optional<TalkTip> pause_nudge(Millis now, Millis t_last_speech);

    // Clears the displayed tip once its display time has elapsed.
    std::optional<TipId> expire(Millis now);

    // Speech resumed; re-arms the pause nudge.
    void note_speech();

    // Tips a new note answers: shown within the response window before the
    // note starts, not yet answered, and either sharing a content word with
    // the note or acknowledged by the client.
    std::vector<TipId> responders(Millis note_t_start, const std::string& note_text) const;

    TalkTip record_response(const TipId& tip, const NoteId& note);

    // Explicit client acknowledgment of a shown tip. Throws UnknownTipError
    // when the tip was never shown.
    void acknowledge(const TipId& tip);
    bool acknowledged(const TipId& tip) const { return acked_.contains(tip); }

    const std::vector<TalkTip>& pool() const { return pool_; }
    const std::vector<TalkTip>& shown() const { return shown_; }
    std::optional<TipId> displayed() const { return displayed_; }
    std::optional<Millis> last_shown_t() const { return last_shown_; }

private:
    bool rate_ok(Millis now) const;
    TalkTip& show(TalkTip tip, Millis now);
    TipId next_id();

    TipParams params_;
    text::WordSet stopwords_;
    std::vector<std::string> nudge_prompts_;
    std::vector<TalkTip> pool_;
    std::vector<TalkTip> shown_;
    std::set<TipId> acked_;
    std::optional<TipId> displayed_;
    std::optional<Millis> last_shown_;
    bool nudged_this_silence_ = false;
    std::size_t nudges_ = 0;
    std::size_t counter_ = 0;
};

}  // namespace thinkaloud
