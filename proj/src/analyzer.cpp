#include "thinkaloud/analyzer.hpp"

#include "thinkaloud/text.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace thinkaloud::analysis {

const std::array<std::string_view, 30> kContractions = {
    "don't",  "doesn't", "didn't",  "can't",    "couldn't", "won't",  "wouldn't", "shouldn't",
    "isn't",  "aren't",  "wasn't",  "weren't",  "haven't",  "hasn't", "hadn't",   "i'm",
    "i've",   "i'll",    "i'd",     "you're",   "you've",   "you'll", "we're",    "we've",
    "we'll",  "they're", "it's",    "that's",   "there's",  "let's",
};

namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

bool is_contraction(const std::string& token) {
    const auto lower = text::to_lower(token);
    return std::find(kContractions.begin(), kContractions.end(), lower) != kContractions.end();
}

std::size_t count_token(const std::string& token) {
    if (is_contraction(token)) return 1;
    std::size_t n = 0;
    std::size_t start = 0;
    while (start <= token.size()) {
        auto end = token.find('\'', start);
        if (end == std::string::npos) end = token.size();
        if (text::has_alpha(std::string_view(token).substr(start, end - start))) ++n;
        start = end + 1;
    }
    return n;
}

}  // namespace

std::size_t word_count(std::string_view transcript) {
    const auto s = text::normalize_apostrophes(transcript);
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < s.size()) {
        if (!is_alnum(s[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        // Alphanumeric runs joined by single inner apostrophes form one token.
        while (j < s.size()) {
            if (is_alnum(s[j])) {
                ++j;
            } else if (s[j] == '\'' && j + 1 < s.size() && is_alnum(s[j + 1])) {
                j += 2;
            } else {
                break;
            }
        }
        count += count_token(s.substr(i, j - i));
        i = j;
    }
    return count;
}

double wpm(std::string_view transcript, double minutes) {
    if (!(minutes > 0)) throw std::invalid_argument("wpm needs a positive duration");
    return static_cast<double>(word_count(transcript)) / minutes;
}

SessionStats session_stats(const std::vector<SessionEvent>& log) {
    SessionStats s;
    for (const auto& e : log) {
        s.duration = std::max(s.duration, e.t);
        switch (e.kind) {
            case EventKind::NoteCreated: ++s.notes_created; break;
            case EventKind::NoteMerged: ++s.notes_merged; break;
            case EventKind::NoteChecked: ++s.notes_checked; break;
            case EventKind::TipShown: ++s.tips_shown; break;
            case EventKind::TipResponse: ++s.tip_responses; break;
            case EventKind::ReminderShown: ++s.reminders_shown; break;
            case EventKind::FilterApplied: ++s.filter_applications; break;
            default: break;
        }
    }
    return s;
}

std::string final_transcript(const std::vector<SessionEvent>& log) {
    std::vector<std::string> parts;
    for (const auto& e : log) {
        if (e.kind != EventKind::FragmentIn || !e.payload.value("is_final", false)) continue;
        parts.push_back(text::trim(e.payload.value("text", std::string())));
    }
    return text::join_words(parts);
}

std::string_view to_string(Engagement e) {
    switch (e) {
        case Engagement::NoteExplorer: return "NoteExplorer";
        case Engagement::TipDrivenElaborator: return "TipDrivenElaborator";
        case Engagement::HeavyIntegrator: return "HeavyIntegrator";
        case Engagement::DocumentationOnly: return "DocumentationOnly";
    }
    return "?";
}

Engagement classify_engagement(std::size_t checked, std::size_t responses, const EngagementThresholds& th) {
    const bool explorer = checked >= th.explorer_checked;
    const bool tips = responses >= th.tip_responses;
    if (explorer && tips) return Engagement::HeavyIntegrator;
    if (explorer) return Engagement::NoteExplorer;
    if (tips) return Engagement::TipDrivenElaborator;
    return Engagement::DocumentationOnly;
}

Engagement classify_engagement(const SessionStats& s, const EngagementThresholds& th) {
    return classify_engagement(s.notes_checked, s.tip_responses, th);
}

std::string_view to_string(RecapUse r) {
    switch (r) {
        case RecapUse::Light: return "LightRecapUser";
        case RecapUse::Iterative: return "IterativeRecapUser";
        case RecapUse::Power: return "PowerRecapUser";
    }
    return "?";
}

RecapUse classify_recap(std::size_t checked, std::size_t filters, const RecapBands& b) {
    int band = checked >= b.power_from ? 2 : checked >= b.iterative_from ? 1 : 0;
    if (filters >= b.filter_shift_from) band = std::min(band + 1, 2);
    return static_cast<RecapUse>(band);
}

RecapUse classify_recap(const SessionStats& s, const RecapBands& b) {
    return classify_recap(s.notes_checked, s.filter_applications, b);
}

namespace {

std::string str(const nlohmann::ordered_json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) return {};
    return it->get<std::string>();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace

std::vector<TimelineRow> timeline(const std::vector<SessionEvent>& log) {
    std::vector<TimelineRow> rows;
    for (const auto& e : log) {
        const auto& p = e.payload;
        std::string detail;
        switch (e.kind) {
            case EventKind::NoteCreated: detail = str(p, "id"); break;
            case EventKind::NoteMerged: detail = str(p, "from") + "->" + str(p, "into"); break;
            case EventKind::NoteChecked: detail = str(p, "id"); break;
            case EventKind::TipShown: detail = str(p, "id") + ": " + str(p, "text"); break;
            case EventKind::TipResponse: detail = str(p, "tip_id") + "->" + str(p, "note_id"); break;
            case EventKind::ReminderShown: detail = str(p, "note_id"); break;
            default: continue;
        }
        rows.push_back({e.t, std::string(to_string(e.kind)), std::move(detail)});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
    return rows;
}

std::string timeline_csv(const std::vector<SessionEvent>& log) {
    std::ostringstream out;
    out << "t,event_kind,detail\n";
    for (const auto& r : timeline(log)) out << r.t << ',' << r.kind << ',' << csv_field(r.detail) << '\n';
    return out.str();
}

}  // namespace thinkaloud::analysis
