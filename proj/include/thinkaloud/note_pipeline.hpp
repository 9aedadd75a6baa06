#pragma once
// Promoted speech → TalkNote, plus the enrichment steps applied to each note.

#include "thinkaloud/model.hpp"
#include "thinkaloud/oracle.hpp"
#include "thinkaloud/overlay.hpp"
#include "thinkaloud/trace.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <set>
#include <vector>

namespace thinkaloud {

struct RetryPolicy {
    // Attempts after the first failure.
    int retries = 2;
    std::vector<std::chrono::milliseconds> backoff{std::chrono::milliseconds(1000),
                                                   std::chrono::milliseconds(2000)};
    // Null means std::this_thread::sleep_for.
    std::function<void(std::chrono::milliseconds)> sleep;

    static RetryPolicy no_wait();
};

struct PipelineParams {
    Millis merge_window_ms = 60000;
    double element_containment = 0.2;
    std::size_t summary_max_chars = 80;
    // Attach a PNG of the overlay to element-link requests.
    bool overlay_png = false;
};

// Dwell-weighted centroid of the samples in the anchor's view, else the last
// position seen before the window, else the canvas centre.
AnchorPoint compute_anchor(const PointerTrace& slice, Millis t0, Millis t1, View view,
                           const std::optional<PointerSample>& last_known, CanvasSize canvas);

TalkNote create_note(NoteId id, const PromotedSegment& segment, const TraceStore& traces,
                     View view_at_end, CanvasSize canvas);

// Fills summary, labels and actions. After the retry budget is spent the note
// is marked Failed with labels {Process} and the transcript's first 80 chars
// as summary. Requires a Pending note.
TalkNote enrich(TalkNote note, SemanticOracle& oracle, const RetryPolicy& retry,
                std::size_t summary_max_chars = 80);

struct MergeOutcome {
    bool merged = false;
    // Set when merged: `prev` extended with `next`, still Pending.
    std::optional<TalkNote> note;
};

// Only consulted for the immediately preceding live note; a gap above the
// merge window skips the oracle entirely.
MergeOutcome try_merge(const TalkNote& prev, const TalkNote& next, SemanticOracle& oracle,
                       CanvasSize canvas, Millis merge_window_ms = 60000);

std::set<ElementId> link_elements(const TalkNote& note, const std::vector<Utterance>& utterances,
                                  const std::vector<SceneElement>& scene, SemanticOracle& oracle,
                                  CanvasSize canvas, const PipelineParams& params = {});

}  // namespace thinkaloud
