#include "thinkaloud/model.hpp"

#include "thinkaloud/text.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace thinkaloud {

namespace {

template <class E, std::size_t N>
std::string_view name_of(E value, const std::array<std::pair<E, std::string_view>, N>& table) {
    for (const auto& [e, name] : table) {
        if (e == value) return name;
    }
    throw ValidationError("enum value out of range");
}

template <class E, std::size_t N>
E parse_enum(std::string_view s, const std::array<std::pair<E, std::string_view>, N>& table,
             const char* what) {
    for (const auto& [e, name] : table) {
        if (name == s) return e;
    }
    throw ValidationError(std::string("unknown ") + what + ": '" + std::string(s) + "'");
}

constexpr std::array<std::pair<View, std::string_view>, 2> kViews{{
    {View::TwoD, "2D"},
    {View::ThreeD, "3D"},
}};

constexpr std::array<std::pair<ProcessLabel, std::string_view>, 6> kLabels{{
    {ProcessLabel::DesignIntent, "DesignIntent"},
    {ProcessLabel::Process, "Process"},
    {ProcessLabel::ToDo, "ToDo"},
    {ProcessLabel::Important, "Important"},
    {ProcessLabel::Problem, "Problem"},
    {ProcessLabel::Question, "Question"},
}};

constexpr std::array<std::pair<AnchorConfidence, std::string_view>, 3> kConfidences{{
    {AnchorConfidence::FromTrace, "FromTrace"},
    {AnchorConfidence::LastKnown, "LastKnown"},
    {AnchorConfidence::Fallback, "Fallback"},
}};

constexpr std::array<std::pair<EnrichmentState, std::string_view>, 3> kStates{{
    {EnrichmentState::Pending, "Pending"},
    {EnrichmentState::Enriched, "Enriched"},
    {EnrichmentState::Failed, "Failed"},
}};

constexpr std::array<std::pair<TipCategory, std::string_view>, 3> kCategories{{
    {TipCategory::PotentialIssue, "PotentialIssue"},
    {TipCategory::NewIdea, "NewIdea"},
    {TipCategory::ProbingQuestion, "ProbingQuestion"},
}};

}  // namespace

std::string_view to_string(View v) { return name_of(v, kViews); }
View view_from_string(std::string_view s) { return parse_enum(s, kViews, "view"); }

std::string_view to_string(ProcessLabel l) { return name_of(l, kLabels); }
ProcessLabel label_from_string(std::string_view s) { return parse_enum(s, kLabels, "label"); }

std::string_view to_string(AnchorConfidence c) { return name_of(c, kConfidences); }
AnchorConfidence confidence_from_string(std::string_view s) {
    return parse_enum(s, kConfidences, "anchor confidence");
}

std::string_view to_string(EnrichmentState s) { return name_of(s, kStates); }
EnrichmentState enrichment_state_from_string(std::string_view s) {
    return parse_enum(s, kStates, "enrichment state");
}

std::string_view to_string(TipCategory c) { return name_of(c, kCategories); }
TipCategory tip_category_from_string(std::string_view s) {
    return parse_enum(s, kCategories, "tip category");
}

void TranscriptFragment::validate() const {
    if (t_start > t_end) throw ValidationError("fragment t_start after t_end");
    if (is_final && text.empty()) throw ValidationError("final fragment has empty text");
}

void PointerSample::validate() const {
    if (z.has_value() != (view == View::ThreeD)) {
        throw ValidationError("pointer sample z must be present exactly for 3D view");
    }
}

void PointerTrace::validate() const {
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].t < samples[i - 1].t) throw ValidationError("trace samples out of order");
    }
    for (const auto& s : samples) s.validate();
}

void ActionSuggestion::validate() const {
    if (title.empty()) throw ValidationError("action title empty");
    if (text::char_count(title) > kMaxActionTitle) throw ValidationError("action title longer than 40 chars");
}

void TalkNote::validate() const {
    if (id.empty()) throw ValidationError("note id empty");
    if (t_start >= t_end) throw ValidationError("note window empty: t_start must precede t_end");
    trace.validate();
    for (const auto& s : trace.samples) {
        if (s.t < t_start - kTraceMargin || s.t > t_end + kTraceMargin) {
            throw ValidationError("trace sample outside note window margin");
        }
    }
    if (actions.size() > kMaxActions) throw ValidationError("more than 3 actions");
    for (const auto& a : actions) a.validate();
    if (enrichment_state == EnrichmentState::Enriched && labels.empty()) {
        throw ValidationError("enriched note without labels");
    }
    if ((anchor.view == View::ThreeD) != anchor.z.has_value()) {
        throw ValidationError("anchor z must be present exactly for 3D view");
    }
}

void TalkThread::validate() const {
    if (id.empty()) throw ValidationError("thread id empty");
    if (note_ids.empty()) throw ValidationError("thread has no notes");
}

void TalkTip::validate() const {
    if (text.empty()) throw ValidationError("tip text empty");
    if (text::char_count(text) > kMaxTipText) throw ValidationError("tip text longer than 80 chars");
    if (responded && !shown_t) throw ValidationError("tip responded before being shown");
}

bool Bounds::contains(const PointerSample& s) const {
    if (s.x < x0 || s.x > x1 || s.y < y0 || s.y > y1) return false;
    if (z0 && z1 && s.z) return *s.z >= *z0 && *s.z <= *z1;
    return true;
}

void SceneElement::validate() const {
    if (id.empty()) throw ValidationError("scene element id empty");
    if (!(bounds.x0 < bounds.x1) || !(bounds.y0 < bounds.y1)) {
        throw ValidationError("scene element '" + id.value + "' has degenerate bounds");
    }
    if (bounds.z0.has_value() != bounds.z1.has_value()) {
        throw ValidationError("scene element '" + id.value + "' has half-specified z range");
    }
    if (bounds.z0 && !(*bounds.z0 < *bounds.z1)) {
        throw ValidationError("scene element '" + id.value + "' has degenerate z range");
    }
}

}  // namespace thinkaloud
