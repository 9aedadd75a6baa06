#include "thinkaloud/protocol.hpp"

#include <cmath>

namespace thinkaloud {

using nlohmann::json;

namespace {

std::string join_errors(const std::vector<FieldError>& errors) {
    std::string out = "invalid session config:";
    for (const auto& e : errors) out += " " + e.field + ": " + e.message + ";";
    return out;
}

const json& require(const json& j, const char* key) {
    if (!j.contains(key)) throw ProtocolError(std::string("missing field '") + key + "'");
    return j.at(key);
}

Millis require_time(const json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_number_integer()) throw ProtocolError(std::string("field '") + key + "' must be an integer (ms)");
    return v.get<Millis>();
}

double require_number(const json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
        throw ProtocolError(std::string("field '") + key + "' must be a finite number");
    }
    return v.get<double>();
}

std::string require_string(const json& j, const char* key) {
    const auto& v = require(j, key);
    if (!v.is_string()) throw ProtocolError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

View parse_view(const json& v) {
    if (!v.is_string()) throw ProtocolError("field 'view' must be \"2D\" or \"3D\"");
    try {
        return view_from_string(v.get<std::string>());
    } catch (const ValidationError& e) {
        throw ProtocolError(e.what());
    }
}

template <class T>
void set_if(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

ConfigRejected::ConfigRejected(std::vector<FieldError> errors)
    : std::invalid_argument(join_errors(errors)), errors_(std::move(errors)) {}

std::string_view to_string(Mode m) { return m == Mode::Assisted ? "assisted" : "baseline"; }

ojson to_json(const EngineParams& p) {
    ojson j;
    j["tick_ms"] = p.tick_ms;
    j["current_window_ms"] = p.current_window_ms;
    j["recent_window_ms"] = p.recent_window_ms;
    j["chunker"] = {{"pause_ms", p.chunker.pause_ms}, {"min_split_words", p.chunker.min_split_words}};
    j["trace"] = {{"bucket_ms", p.trace.bucket_ms}, {"margin_ms", p.trace.margin_ms}};
    j["pipeline"] = {{"merge_window_ms", p.pipeline.merge_window_ms},
                     {"element_containment", p.pipeline.element_containment},
                     {"summary_max_chars", p.pipeline.summary_max_chars},
                     {"overlay_png", p.pipeline.overlay_png}};
    j["threads"] = {{"min_affinity", p.threads.min_affinity},
                    {"window_ms", p.threads.window_ms},
                    {"context_notes", p.threads.context_notes}};
    j["tips"] = {{"generate_every_ms", p.tips.generate_every_ms}, {"gate_every_ms", p.tips.gate_every_ms},
                 {"min_gap_ms", p.tips.min_gap_ms},           {"display_ms", p.tips.display_ms},
                 {"nudge_after_ms", p.tips.nudge_after_ms},   {"response_window_ms", p.tips.response_window_ms},
                 {"pool_cap", p.tips.pool_cap}};
    j["reminders"] = {{"every_ms", p.reminders.every_ms},
                      {"cooldown_ms", p.reminders.cooldown_ms},
                      {"display_ms", p.reminders.display_ms},
                      {"max_per_round", p.reminders.max_per_round}};
    return j;
}

EngineParams parse_engine_params(const json& j, EngineParams p) {
    if (!j.is_object()) throw std::invalid_argument("params must be an object");
    set_if(j, "tick_ms", p.tick_ms);
    set_if(j, "current_window_ms", p.current_window_ms);
    set_if(j, "recent_window_ms", p.recent_window_ms);
    if (j.contains("chunker")) {
        const auto& c = j.at("chunker");
        set_if(c, "pause_ms", p.chunker.pause_ms);
        set_if(c, "min_split_words", p.chunker.min_split_words);
    }
    if (j.contains("trace")) {
        const auto& c = j.at("trace");
        set_if(c, "bucket_ms", p.trace.bucket_ms);
        set_if(c, "margin_ms", p.trace.margin_ms);
    }
    if (j.contains("pipeline")) {
        const auto& c = j.at("pipeline");
        set_if(c, "merge_window_ms", p.pipeline.merge_window_ms);
        set_if(c, "element_containment", p.pipeline.element_containment);
        set_if(c, "summary_max_chars", p.pipeline.summary_max_chars);
        set_if(c, "overlay_png", p.pipeline.overlay_png);
    }
    if (j.contains("threads")) {
        const auto& c = j.at("threads");
        set_if(c, "min_affinity", p.threads.min_affinity);
        set_if(c, "window_ms", p.threads.window_ms);
        set_if(c, "context_notes", p.threads.context_notes);
    }
    if (j.contains("tips")) {
        const auto& c = j.at("tips");
        set_if(c, "generate_every_ms", p.tips.generate_every_ms);
        set_if(c, "gate_every_ms", p.tips.gate_every_ms);
        set_if(c, "min_gap_ms", p.tips.min_gap_ms);
        set_if(c, "display_ms", p.tips.display_ms);
        set_if(c, "nudge_after_ms", p.tips.nudge_after_ms);
        set_if(c, "response_window_ms", p.tips.response_window_ms);
        set_if(c, "pool_cap", p.tips.pool_cap);
    }
    if (j.contains("reminders")) {
        const auto& c = j.at("reminders");
        set_if(c, "every_ms", p.reminders.every_ms);
        set_if(c, "cooldown_ms", p.reminders.cooldown_ms);
        set_if(c, "display_ms", p.reminders.display_ms);
        set_if(c, "max_per_round", p.reminders.max_per_round);
    }
    if (p.tick_ms <= 0) throw std::invalid_argument("tick_ms must be positive");
    for (Millis every : {p.tips.generate_every_ms, p.tips.gate_every_ms, p.reminders.every_ms}) {
        if (every <= 0) throw std::invalid_argument("cadences must be positive");
    }
    if (p.trace.bucket_ms <= 0) throw std::invalid_argument("trace.bucket_ms must be positive");
    return p;
}

ojson to_json(const SceneElement& e) {
    ojson b;
    b["x0"] = e.bounds.x0;
    b["y0"] = e.bounds.y0;
    b["x1"] = e.bounds.x1;
    b["y1"] = e.bounds.y1;
    if (e.bounds.z0) {
        b["z0"] = *e.bounds.z0;
        b["z1"] = *e.bounds.z1;
    }
    return {{"id", e.id.value}, {"name", e.name}, {"bounds", b}};
}

SceneElement scene_element_from_json(const json& j) {
    if (!j.is_object()) throw ProtocolError("scene element must be an object");
    SceneElement e;
    e.id = ElementId(require_string(j, "id"));
    e.name = require_string(j, "name");
    const auto& b = require(j, "bounds");
    e.bounds.x0 = require_number(b, "x0");
    e.bounds.y0 = require_number(b, "y0");
    e.bounds.x1 = require_number(b, "x1");
    e.bounds.y1 = require_number(b, "y1");
    if (b.contains("z0")) e.bounds.z0 = require_number(b, "z0");
    if (b.contains("z1")) e.bounds.z1 = require_number(b, "z1");
    try {
        e.validate();
    } catch (const ValidationError& ex) {
        throw ProtocolError(ex.what());
    }
    return e;
}

SessionConfig parse_session_config(const json& j) {
    std::vector<FieldError> errors;
    SessionConfig c;
    if (!j.is_object()) throw ConfigRejected(std::vector<FieldError>{{"", "config must be a JSON object"}});

    if (!j.contains("mode")) {
        errors.push_back({"mode", "required (\"assisted\" or \"baseline\")"});
    } else if (j["mode"] == "assisted") {
        c.mode = Mode::Assisted;
    } else if (j["mode"] == "baseline") {
        c.mode = Mode::Baseline;
    } else {
        errors.push_back({"mode", "must be \"assisted\" or \"baseline\""});
    }

    for (auto [key, out] : {std::pair{"brief", &c.brief}, std::pair{"scene_description", &c.scene_description}}) {
        if (!j.contains(key)) continue;
        if (j[key].is_string()) {
            *out = j[key].get<std::string>();
        } else {
            errors.push_back({key, "must be a string"});
        }
    }

    if (!j.contains("canvas") || !j["canvas"].is_object()) {
        errors.push_back({"canvas", "required object with positive width and height"});
    } else {
        for (auto [key, out] : {std::pair{"width", &c.canvas.width}, std::pair{"height", &c.canvas.height}}) {
            const auto& cv = j["canvas"];
            if (!cv.contains(key)) {
                errors.push_back({std::string("canvas.") + key, "required"});
            } else if (!cv[key].is_number() || !(cv[key].get<double>() > 0)) {
                errors.push_back({std::string("canvas.") + key, "must be a positive number"});
            } else {
                *out = cv[key].get<double>();
            }
        }
    }

    if (j.contains("scene")) {
        if (!j["scene"].is_array()) {
            errors.push_back({"scene", "must be an array"});
        } else {
            std::set<ElementId> ids;
            for (std::size_t i = 0; i < j["scene"].size(); ++i) {
                try {
                    auto e = scene_element_from_json(j["scene"][i]);
                    if (!ids.insert(e.id).second) throw ProtocolError("duplicate element id '" + e.id.value + "'");
                    c.scene.push_back(std::move(e));
                } catch (const ProtocolError& ex) {
                    errors.push_back({"scene[" + std::to_string(i) + "]", ex.what()});
                }
            }
        }
    }

    if (j.contains("initial_view")) {
        try {
            c.initial_view = parse_view(j["initial_view"]);
        } catch (const ProtocolError& ex) {
            errors.push_back({"initial_view", ex.what()});
        }
    }

    if (j.contains("params")) {
        try {
            c.params = parse_engine_params(j["params"]);
        } catch (const std::exception& ex) {
            errors.push_back({"params", ex.what()});
        }
    }

    if (!errors.empty()) throw ConfigRejected(std::move(errors));
    return c;
}

ojson to_json(const SessionConfig& c) {
    ojson j;
    j["mode"] = to_string(c.mode);
    j["brief"] = c.brief;
    j["scene_description"] = c.scene_description;
    j["scene"] = ojson::array();
    for (const auto& e : c.scene) j["scene"].push_back(to_json(e));
    j["canvas"] = {{"width", c.canvas.width}, {"height", c.canvas.height}};
    j["initial_view"] = to_string(c.initial_view);
    j["params"] = to_json(c.params);
    return j;
}

ojson to_json(const PointerSample& s) {
    ojson j;
    j["x"] = s.x;
    j["y"] = s.y;
    if (s.z) j["z"] = *s.z;
    j["t"] = s.t;
    j["view"] = to_string(s.view);
    return j;
}

PointerSample pointer_sample_from_json(const json& j) {
    PointerSample s;
    s.x = require_number(j, "x");
    s.y = require_number(j, "y");
    s.t = require_time(j, "t");
    s.view = j.contains("view") ? parse_view(j.at("view")) : View::TwoD;
    if (j.contains("z")) s.z = require_number(j, "z");
    try {
        s.validate();
    } catch (const ValidationError& e) {
        throw ProtocolError(e.what());
    }
    return s;
}

ojson to_json(const PointerTrace& t) {
    ojson arr = ojson::array();
    for (const auto& s : t.samples) arr.push_back(to_json(s));
    return arr;
}

ojson to_json(const AnchorPoint& a) {
    ojson j;
    j["x"] = a.x;
    j["y"] = a.y;
    if (a.z) j["z"] = *a.z;
    j["view"] = to_string(a.view);
    j["confidence"] = to_string(a.confidence);
    return j;
}

ojson to_json(const LabelSet& labels) {
    ojson arr = ojson::array();
    for (auto l : labels) arr.push_back(to_string(l));
    return arr;
}

LabelSet labels_from_json(const json& j) {
    if (!j.is_array()) throw ProtocolError("labels must be an array of label names");
    LabelSet out;
    for (const auto& v : j) {
        if (!v.is_string()) throw ProtocolError("labels must be strings");
        try {
            out.insert(label_from_string(v.get<std::string>()));
        } catch (const ValidationError& e) {
            throw ProtocolError(e.what());
        }
    }
    return out;
}

ojson to_json(const TalkNote& n) {
    ojson j;
    j["id"] = n.id.value;
    j["transcript"] = n.transcript;
    j["t_start"] = n.t_start;
    j["t_end"] = n.t_end;
    j["summary"] = n.summary ? ojson(*n.summary) : ojson(nullptr);
    j["labels"] = to_json(n.labels);
    j["actions"] = ojson::array();
    for (const auto& a : n.actions) j["actions"].push_back(a.title);
    j["anchor"] = to_json(n.anchor);
    j["trace"] = to_json(n.trace);
    j["linked_elements"] = ojson::array();
    for (const auto& e : n.linked_elements) j["linked_elements"].push_back(e.value);
    j["thread_id"] = n.thread_id.empty() ? ojson(nullptr) : ojson(n.thread_id.value);
    j["merged_from"] = ojson::array();
    for (const auto& m : n.merged_from) j["merged_from"].push_back(m.value);
    j["enrichment_state"] = to_string(n.enrichment_state);
    return j;
}

ojson to_json(const TalkThread& t) {
    ojson j;
    j["id"] = t.id.value;
    j["title"] = t.title;
    j["note_ids"] = ojson::array();
    for (const auto& n : t.note_ids) j["note_ids"].push_back(n.value);
    j["t_last"] = t.t_last;
    return j;
}

ojson to_json(const TalkTip& t) {
    ojson j;
    j["id"] = t.id.value;
    j["category"] = to_string(t.category);
    j["text"] = t.text;
    j["created_t"] = t.created_t;
    j["shown_t"] = t.shown_t ? ojson(*t.shown_t) : ojson(nullptr);
    j["responded"] = t.responded;
    return j;
}

ClientMessage parse_client_message(const json& j) {
    if (!j.is_object()) throw ProtocolError("message must be a JSON object");
    const auto kind = require_string(j, "kind");
    if (kind == "fragment") {
        FragmentMsg m;
        m.fragment.text = require_string(j, "text");
        m.fragment.t_start = require_time(j, "t_start");
        m.fragment.t_end = require_time(j, "t_end");
        const auto& f = require(j, "is_final");
        if (!f.is_boolean()) throw ProtocolError("field 'is_final' must be a boolean");
        m.fragment.is_final = f.get<bool>();
        try {
            m.fragment.validate();
        } catch (const ValidationError& e) {
            throw ProtocolError(e.what());
        }
        return m;
    }
    if (kind == "pointer") return PointerMsg{pointer_sample_from_json(j)};
    if (kind == "note_checked") return NoteCheckedMsg{NoteId(require_string(j, "id"))};
    if (kind == "tip_ack") return TipAckMsg{TipId(require_string(j, "id"))};
    if (kind == "filter") return FilterMsg{labels_from_json(require(j, "labels"))};
    if (kind == "view_change") return ViewChangeMsg{parse_view(require(j, "view"))};
    throw ProtocolError("unknown message kind '" + kind + "'");
}

ClientMessage parse_client_message(std::string_view frame) {
    json j;
    try {
        j = json::parse(frame);
    } catch (const json::parse_error& e) {
        throw ProtocolError(std::string("malformed JSON: ") + e.what());
    }
    return parse_client_message(j);
}

ojson to_json(const ClientMessage& m) {
    return std::visit(
        [](const auto& msg) -> ojson {
            using T = std::decay_t<decltype(msg)>;
            ojson j;
            if constexpr (std::is_same_v<T, FragmentMsg>) {
                j["kind"] = "fragment";
                j["text"] = msg.fragment.text;
                j["t_start"] = msg.fragment.t_start;
                j["t_end"] = msg.fragment.t_end;
                j["is_final"] = msg.fragment.is_final;
            } else if constexpr (std::is_same_v<T, PointerMsg>) {
                j["kind"] = "pointer";
                const auto sample = to_json(msg.sample);
                for (const auto& [k, v] : sample.items()) j[k] = v;
            } else if constexpr (std::is_same_v<T, NoteCheckedMsg>) {
                j["kind"] = "note_checked";
                j["id"] = msg.id.value;
            } else if constexpr (std::is_same_v<T, TipAckMsg>) {
                j["kind"] = "tip_ack";
                j["id"] = msg.id.value;
            } else if constexpr (std::is_same_v<T, FilterMsg>) {
                j["kind"] = "filter";
                j["labels"] = to_json(msg.labels);
            } else {
                j["kind"] = "view_change";
                j["view"] = to_string(msg.view);
            }
            return j;
        },
        m);
}

std::optional<Millis> message_time(const ClientMessage& m) {
    if (const auto* f = std::get_if<FragmentMsg>(&m)) {
        return f->fragment.is_final ? f->fragment.t_end : f->fragment.t_start;
    }
    if (const auto* p = std::get_if<PointerMsg>(&m)) return p->sample.t;
    return std::nullopt;
}

std::string error_frame(const std::string& message) {
    ojson j;
    j["kind"] = "error";
    j["payload"] = {{"message", message}};
    return j.dump();
}

}  // namespace thinkaloud
