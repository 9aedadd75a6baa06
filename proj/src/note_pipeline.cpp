#include "thinkaloud/note_pipeline.hpp"

#include "thinkaloud/deterministic_oracle.hpp"
#include "thinkaloud/text.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace thinkaloud {

RetryPolicy RetryPolicy::no_wait() {
    RetryPolicy p;
    p.sleep = [](std::chrono::milliseconds) {};
    return p;
}

AnchorPoint compute_anchor(const PointerTrace& slice, Millis /*t0*/, Millis t1, View view,
                           const std::optional<PointerSample>& last_known, CanvasSize canvas) {
    std::vector<PointerSample> in_view;
    std::copy_if(slice.samples.begin(), slice.samples.end(), std::back_inserter(in_view),
                 [&](const PointerSample& s) { return s.view == view; });

    AnchorPoint a;
    a.view = view;
    if (auto c = dwell_centroid(in_view, t1)) {
        a.x = c->x;
        a.y = c->y;
        a.z = c->z;
        a.confidence = AnchorConfidence::FromTrace;
    } else if (last_known && last_known->view == view) {
        a.x = last_known->x;
        a.y = last_known->y;
        a.z = last_known->z;
        a.confidence = AnchorConfidence::LastKnown;
    } else {
        a.x = canvas.width / 2;
        a.y = canvas.height / 2;
        a.confidence = AnchorConfidence::Fallback;
    }
    if (view == View::ThreeD && !a.z) a.z = 0.0;
    if (view == View::TwoD) a.z.reset();
    return a;
}

TalkNote create_note(NoteId id, const PromotedSegment& segment, const TraceStore& traces,
                     View view_at_end, CanvasSize canvas) {
    if (text::trim(segment.transcript).empty()) throw std::invalid_argument("cannot create a note from empty speech");
    TalkNote note;
    note.id = std::move(id);
    note.transcript = segment.transcript;
    note.t_start = segment.t_start;
    // Zero-length utterances still get a 1 ms window.
    note.t_end = std::max(segment.t_end, segment.t_start + 1);
    note.trace = traces.slice(note.t_start, note.t_end);
    const auto earlier = traces.last_before(note.t_start - traces.params().margin_ms, view_at_end);
    note.anchor = compute_anchor(note.trace, note.t_start, note.t_end, view_at_end, earlier, canvas);
    note.enrichment_state = EnrichmentState::Pending;
    return note;
}

namespace {

void pause(const RetryPolicy& retry, int attempt) {
    if (retry.backoff.empty()) return;
    const auto delay = retry.backoff[std::min<std::size_t>(attempt, retry.backoff.size() - 1)];
    if (retry.sleep) {
        retry.sleep(delay);
    } else {
        std::this_thread::sleep_for(delay);
    }
}

std::vector<ActionSuggestion> sanitize_actions(std::vector<ActionSuggestion> actions) {
    std::vector<ActionSuggestion> out;
    for (auto& a : actions) {
        a.title = text::truncate_chars(text::trim(a.title), kMaxActionTitle);
        if (!a.title.empty() && out.size() < kMaxActions) out.push_back(std::move(a));
    }
    return out;
}

}  // namespace

TalkNote enrich(TalkNote note, SemanticOracle& oracle, const RetryPolicy& retry,
                std::size_t summary_max_chars) {
    if (note.enrichment_state != EnrichmentState::Pending) {
        throw std::logic_error("enrich requires a Pending note");
    }
    for (int attempt = 0; attempt <= retry.retries; ++attempt) {
        if (attempt > 0) pause(retry, attempt - 1);
        auto summary = oracle.summarize(note.transcript);
        if (!summary) continue;
        auto labels = oracle.classify_labels(note.transcript);
        if (!labels || labels->empty()) continue;
        auto actions = oracle.suggest_actions(note.transcript, *labels);
        if (!actions) continue;
        note.summary = text::truncate_chars(text::trim(*summary), summary_max_chars);
        note.labels = std::move(*labels);
        note.actions = sanitize_actions(std::move(*actions));
        note.enrichment_state = EnrichmentState::Enriched;
        return note;
    }
    note.summary = text::truncate_chars(note.transcript, summary_max_chars);
    note.labels = {ProcessLabel::Process};
    note.actions.clear();
    note.enrichment_state = EnrichmentState::Failed;
    return note;
}

MergeOutcome try_merge(const TalkNote& prev, const TalkNote& next, SemanticOracle& oracle,
                       CanvasSize canvas, Millis merge_window_ms) {
    if (next.t_start - prev.t_end > merge_window_ms) return {};
    if (oracle.merge_check(prev.transcript, next.transcript) != true) return {};

    TalkNote merged = prev;
    merged.transcript = text::join_words({prev.transcript, next.transcript});
    merged.t_start = std::min(prev.t_start, next.t_start);
    merged.t_end = std::max(prev.t_end, next.t_end);
    const Millis last_t = prev.trace.empty() ? std::numeric_limits<Millis>::min() : prev.trace.samples.back().t;
    for (const auto& s : next.trace.samples) {
        if (s.t > last_t) merged.trace.samples.push_back(s);
    }
    std::optional<PointerSample> last_known;
    for (const auto* a : {&prev.anchor, &next.anchor}) {
        if (a->confidence == AnchorConfidence::LastKnown) {
            last_known = PointerSample{a->x, a->y, merged.t_start, a->view, a->z};
            break;
        }
    }
    merged.anchor = compute_anchor(merged.trace, merged.t_start, merged.t_end, next.anchor.view,
                                   last_known, canvas);
    merged.merged_from.push_back(next.id);
    merged.summary.reset();
    merged.labels.clear();
    merged.actions.clear();
    merged.linked_elements.clear();
    merged.enrichment_state = EnrichmentState::Pending;
    return {true, std::move(merged)};
}

std::set<ElementId> link_elements(const TalkNote& note, const std::vector<Utterance>& utterances,
                                  const std::vector<SceneElement>& scene, SemanticOracle& oracle,
                                  CanvasSize canvas, const PipelineParams& params) {
    if (scene.empty()) return {};
    ElementLinkRequest req;
    req.transcript = note.transcript;
    req.trace = note.trace;
    req.scene = scene;
    req.overlay = render_overlay(note.trace, utterances);
    if (params.overlay_png) {
        const auto w = static_cast<std::uint32_t>(std::clamp(canvas.width, 1.0, 2048.0));
        const auto h = static_cast<std::uint32_t>(std::clamp(canvas.height, 1.0, 2048.0));
        req.overlay_png = encode_png(rasterize_overlay(render_scene(scene, canvas, w, h), req.overlay, canvas));
    }
    auto linked = oracle.element_link(req);
    if (!linked) return rule_based_element_links(note.transcript, note.trace, scene, params.element_containment);
    std::set<ElementId> out;
    for (const auto& id : *linked) {
        const bool known = std::any_of(scene.begin(), scene.end(), [&](const SceneElement& e) { return e.id == id; });
        if (known) out.insert(id);
    }
    return out;
}

}  // namespace thinkaloud
