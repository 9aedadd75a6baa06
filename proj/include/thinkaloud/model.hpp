#pragma once
// Domain types shared by every stage of the annotation engine.
//
// Everything here is a plain value. Behaviour lives in the stage modules;
// this header only carries construction-time validation and the string
// forms used on the wire and in session logs.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace thinkaloud {

// Session-relative milliseconds.
using Millis = std::int64_t;

class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

template <class Tag>
struct StrongId {
    std::string value;

    StrongId() = default;
    explicit StrongId(std::string v) : value(std::move(v)) {}

    bool empty() const { return value.empty(); }
    auto operator<=>(const StrongId&) const = default;
    bool operator==(const StrongId&) const = default;
};

using NoteId = StrongId<struct NoteIdTag>;
using ThreadId = StrongId<struct ThreadIdTag>;
using TipId = StrongId<struct TipIdTag>;
using ElementId = StrongId<struct ElementIdTag>;

enum class View { TwoD, ThreeD };

std::string_view to_string(View v);
View view_from_string(std::string_view s);

struct TranscriptFragment {
    std::string text;
    Millis t_start = 0;
    Millis t_end = 0;
    bool is_final = false;

    void validate() const;
};

struct PointerSample {
    double x = 0;
    double y = 0;
    Millis t = 0;
    View view = View::TwoD;
    std::optional<double> z;

    void validate() const;
    bool operator==(const PointerSample&) const = default;
};

// Samples are nondecreasing in t.
struct PointerTrace {
    std::vector<PointerSample> samples;

    bool empty() const { return samples.empty(); }
    std::size_t size() const { return samples.size(); }
    void validate() const;
    bool operator==(const PointerTrace&) const = default;
};

enum class ProcessLabel { DesignIntent, Process, ToDo, Important, Problem, Question };

inline constexpr ProcessLabel kAllLabels[] = {
    ProcessLabel::DesignIntent, ProcessLabel::Process, ProcessLabel::ToDo,
    ProcessLabel::Important,    ProcessLabel::Problem, ProcessLabel::Question,
};

std::string_view to_string(ProcessLabel l);
ProcessLabel label_from_string(std::string_view s);

using LabelSet = std::set<ProcessLabel>;

enum class AnchorConfidence { FromTrace, LastKnown, Fallback };

std::string_view to_string(AnchorConfidence c);
AnchorConfidence confidence_from_string(std::string_view s);

struct AnchorPoint {
    double x = 0;
    double y = 0;
    std::optional<double> z;
    View view = View::TwoD;
    AnchorConfidence confidence = AnchorConfidence::Fallback;

    bool operator==(const AnchorPoint&) const = default;
};

inline constexpr std::size_t kMaxActionTitle = 40;
inline constexpr std::size_t kMaxActions = 3;

struct ActionSuggestion {
    std::string title;

    void validate() const;
    bool operator==(const ActionSuggestion&) const = default;
};

enum class EnrichmentState { Pending, Enriched, Failed };

std::string_view to_string(EnrichmentState s);
EnrichmentState enrichment_state_from_string(std::string_view s);

// Trace slices carry this margin on both sides of the utterance window.
inline constexpr Millis kTraceMargin = 500;

struct TalkNote {
    NoteId id;
    std::string transcript;
    Millis t_start = 0;
    Millis t_end = 0;
    std::optional<std::string> summary;
    LabelSet labels;
    std::vector<ActionSuggestion> actions;
    AnchorPoint anchor;
    PointerTrace trace;
    std::set<ElementId> linked_elements;
    ThreadId thread_id;
    std::vector<NoteId> merged_from;
    EnrichmentState enrichment_state = EnrichmentState::Pending;

    void validate() const;
};

struct TalkThread {
    ThreadId id;
    std::string title;
    std::vector<NoteId> note_ids;
    Millis t_last = 0;

    void validate() const;
};

enum class TipCategory { PotentialIssue, NewIdea, ProbingQuestion };

std::string_view to_string(TipCategory c);
TipCategory tip_category_from_string(std::string_view s);

inline constexpr std::size_t kMaxTipText = 80;

struct TalkTip {
    TipId id;
    TipCategory category = TipCategory::ProbingQuestion;
    std::string text;
    Millis created_t = 0;
    std::optional<Millis> shown_t;
    bool responded = false;

    void validate() const;
};

struct TalkReminder {
    NoteId note_id;
    Millis triggered_t = 0;
    Millis cooldown_until = 0;
};

struct Bounds {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    // Present for 3D boxes only.
    std::optional<double> z0, z1;

    bool contains(const PointerSample& s) const;
    bool operator==(const Bounds&) const = default;
};

struct SceneElement {
    ElementId id;
    std::string name;
    Bounds bounds;

    void validate() const;
};

struct CanvasSize {
    double width = 0;
    double height = 0;

    bool operator==(const CanvasSize&) const = default;
};

// A contiguous run of final speech handed from the chunker to the note pipeline.
struct PromotedSegment {
    std::string transcript;
    Millis t_start = 0;
    Millis t_end = 0;
    std::vector<TranscriptFragment> fragments;
};

}  // namespace thinkaloud

template <class Tag>
struct std::hash<thinkaloud::StrongId<Tag>> {
    std::size_t operator()(const thinkaloud::StrongId<Tag>& id) const noexcept {
        return std::hash<std::string>{}(id.value);
    }
};
