#pragma once
// Session configuration, client messages and JSON forms of domain values.

#include "thinkaloud/chunker.hpp"
#include "thinkaloud/model.hpp"
#include "thinkaloud/note_pipeline.hpp"
#include "thinkaloud/reminders.hpp"
#include "thinkaloud/threader.hpp"
#include "thinkaloud/tips.hpp"
#include "thinkaloud/trace.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace thinkaloud {

using ojson = nlohmann::ordered_json;

// Malformed or semantically invalid client input. The connection survives.
class ProtocolError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct FieldError {
    std::string field;
    std::string message;
};

class ConfigRejected : public std::invalid_argument {
public:
    explicit ConfigRejected(std::vector<FieldError> errors);
    const std::vector<FieldError>& errors() const { return errors_; }

private:
    std::vector<FieldError> errors_;
};

// `assisted` runs the full pipeline; `baseline` only streams transcript text.
enum class Mode { Assisted, Baseline };

std::string_view to_string(Mode m);

struct EngineParams {
    Millis tick_ms = 1000;
    // Speech considered "current" for tip gating and reminders.
    Millis current_window_ms = 30000;
    // Speech sent to tip generation.
    Millis recent_window_ms = 60000;
    ChunkerParams chunker;
    TraceParams trace;
    PipelineParams pipeline;
    ThreadParams threads;
    TipParams tips;
    ReminderParams reminders;
};

struct SessionConfig {
    Mode mode = Mode::Assisted;
    std::string brief;
    std::string scene_description;
    std::vector<SceneElement> scene;
    CanvasSize canvas;
    View initial_view = View::TwoD;
    EngineParams params;
};

// Throws ConfigRejected listing every invalid field.
SessionConfig parse_session_config(const nlohmann::json& j);
ojson to_json(const SessionConfig& c);

ojson to_json(const EngineParams& p);
// Overrides fields of `base` present in `j`.
EngineParams parse_engine_params(const nlohmann::json& j, EngineParams base = {});

struct FragmentMsg {
    TranscriptFragment fragment;
};
struct PointerMsg {
    PointerSample sample;
};
struct NoteCheckedMsg {
    NoteId id;
};
struct TipAckMsg {
    TipId id;
};
struct FilterMsg {
    LabelSet labels;
};
struct ViewChangeMsg {
    View view = View::TwoD;
};

using ClientMessage = std::variant<FragmentMsg, PointerMsg, NoteCheckedMsg, TipAckMsg, FilterMsg, ViewChangeMsg>;

// Parses a client frame ({"kind": ..., fields...}). Throws ProtocolError.
ClientMessage parse_client_message(const nlohmann::json& j);
ClientMessage parse_client_message(std::string_view frame);
// Wire form including "kind".
ojson to_json(const ClientMessage& m);

// Message time used to order input against ticks.
std::optional<Millis> message_time(const ClientMessage& m);

ojson to_json(const PointerSample& s);
PointerSample pointer_sample_from_json(const nlohmann::json& j);
ojson to_json(const PointerTrace& t);
ojson to_json(const AnchorPoint& a);
ojson to_json(const LabelSet& labels);
LabelSet labels_from_json(const nlohmann::json& j);
ojson to_json(const TalkNote& n);
ojson to_json(const TalkThread& t);
ojson to_json(const TalkTip& t);
ojson to_json(const SceneElement& e);
SceneElement scene_element_from_json(const nlohmann::json& j);

std::string error_frame(const std::string& message);

}  // namespace thinkaloud
