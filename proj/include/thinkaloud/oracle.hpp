#pragma once
// The single judgment interface used by every pipeline stage.
//
// Each operation returns std::nullopt when the provider failed, timed out or
// produced something unusable. Callers own the degraded result for their op;
// see degraded.hpp. Implementations must tolerate concurrent calls.

#include "thinkaloud/model.hpp"

#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace thinkaloud {

enum class SplitVerdict { Continue, NewTopic };

struct TipDraft {
    TipCategory category = TipCategory::ProbingQuestion;
    std::string text;

    bool operator==(const TipDraft&) const = default;
};

struct NoteDigest {
    NoteId id;
    std::string transcript;
    std::optional<std::string> summary;
};

struct OverlayMarker {
    double x = 0;
    double y = 0;
    double radius = 0;
    std::size_t fragment_index = 0;

    bool operator==(const OverlayMarker&) const = default;
};

struct OverlayDescriptor {
    std::vector<OverlayMarker> markers;
    // Utterances and pointer coordinates as plain text, one entry per line.
    std::string timeline;
};

struct ElementLinkRequest {
    std::string transcript;
    PointerTrace trace;
    std::vector<SceneElement> scene;
    OverlayDescriptor overlay;
    // PNG bytes of the composited overlay; empty when no image was rendered.
    std::vector<unsigned char> overlay_png;
};

class SemanticOracle {
public:
    virtual ~SemanticOracle() = default;

    virtual std::optional<SplitVerdict> judge_split(const std::string& buffer,
                                                    const std::string& fragment) = 0;
    virtual std::optional<std::string> summarize(const std::string& transcript) = 0;
    virtual std::optional<LabelSet> classify_labels(const std::string& transcript) = 0;
    virtual std::optional<std::vector<ActionSuggestion>> suggest_actions(
        const std::string& transcript, const LabelSet& labels) = 0;
    virtual std::optional<bool> merge_check(const std::string& previous,
                                            const std::string& next) = 0;
    // Affinity in [0, 1] between a note and a thread's recent context.
    virtual std::optional<double> thread_affinity(const std::string& note,
                                                  const std::string& thread_context) = 0;
    // `exclude` lists tip texts already pooled or shown.
    virtual std::optional<std::vector<TipDraft>> tip_candidates(
        const std::string& recent_transcript, const std::string& brief,
        const std::set<std::string>& exclude) = 0;
    // Index into `candidates` of the tip worth interrupting for, or an empty
    // inner optional when none is relevant enough.
    virtual std::optional<std::optional<std::size_t>> tip_gate(
        const std::vector<TipDraft>& candidates, const std::string& current_window) = 0;
    // Relevant prior notes, most relevant first.
    virtual std::optional<std::vector<NoteId>> related_notes(
        const std::string& current_window, const std::vector<NoteDigest>& notes,
        const std::string& brief) = 0;
    virtual std::optional<std::set<ElementId>> element_link(const ElementLinkRequest& request) = 0;
};

}  // namespace thinkaloud
