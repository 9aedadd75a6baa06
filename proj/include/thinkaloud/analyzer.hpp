#pragma once
// Offline statistics over session logs.

#include "thinkaloud/events.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace thinkaloud::analysis {

// Contractions counted as one word.
extern const std::array<std::string_view, 30> kContractions;

// Words that are not pure punctuation or digits. Throws
// std::invalid_argument for a non-positive duration.
std::size_t word_count(std::string_view transcript);
double wpm(std::string_view transcript, double minutes);

struct SessionStats {
    Millis duration = 0;
    std::size_t notes_created = 0;
    std::size_t notes_merged = 0;
    std::size_t notes_checked = 0;
    std::size_t tips_shown = 0;
    std::size_t tip_responses = 0;
    std::size_t reminders_shown = 0;
    std::size_t filter_applications = 0;

    bool operator==(const SessionStats&) const = default;
};

SessionStats session_stats(const std::vector<SessionEvent>& log);

// Final transcript of the session, fragments joined by single spaces.
std::string final_transcript(const std::vector<SessionEvent>& log);

enum class Engagement { NoteExplorer, TipDrivenElaborator, HeavyIntegrator, DocumentationOnly };
std::string_view to_string(Engagement e);

// Loosest integer cuts that separate every labeled session we have seen.
struct EngagementThresholds {
    std::size_t explorer_checked = 4;
    std::size_t tip_responses = 7;
};

Engagement classify_engagement(std::size_t notes_checked, std::size_t tip_responses,
                               const EngagementThresholds& th = {});
Engagement classify_engagement(const SessionStats& s, const EngagementThresholds& th = {});

enum class RecapUse { Light, Iterative, Power };
std::string_view to_string(RecapUse r);

struct RecapBands {
    std::size_t iterative_from = 2;
    std::size_t power_from = 6;
    // Filter use at or above this bumps the band up one level.
    std::size_t filter_shift_from = 3;
};

RecapUse classify_recap(std::size_t notes_checked, std::size_t filter_applications, const RecapBands& b = {});
RecapUse classify_recap(const SessionStats& s, const RecapBands& b = {});

struct TimelineRow {
    Millis t = 0;
    std::string kind;
    std::string detail;
};

// Plot-relevant events, stably sorted by t.
std::vector<TimelineRow> timeline(const std::vector<SessionEvent>& log);
std::string timeline_csv(const std::vector<SessionEvent>& log);

}  // namespace thinkaloud::analysis
