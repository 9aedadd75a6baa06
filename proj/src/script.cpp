#include "thinkaloud/script.hpp"

#include "thinkaloud/text.hpp"

#include <algorithm>
#include <cmath>

namespace thinkaloud {

Script& Script::say(const std::string& text, Millis t_start, Millis t_end) {
    const auto words = text::words(text);
    const auto first = text.substr(0, text.find(' '));
    if (!words.empty()) send(FragmentMsg{{first, t_start, t_start, false}}, t_start);
    return send(FragmentMsg{{text, t_start, t_end, true}}, t_end);
}

Script& Script::point(double x, double y, Millis t, View view) {
    PointerSample s{x, y, t, view, std::nullopt};
    if (view == View::ThreeD) s.z = 0;
    return send(PointerMsg{s}, t);
}

Script& Script::glide(double x0, double y0, double x1, double y1, Millis t0, Millis t1, Millis step, View view) {
    if (step <= 0 || t1 < t0) throw std::invalid_argument("bad glide");
    for (Millis t = t0;; t = std::min(t + step, t1)) {
        const double f = t1 == t0 ? 1.0 : static_cast<double>(t - t0) / static_cast<double>(t1 - t0);
        point(x0 + (x1 - x0) * f, y0 + (y1 - y0) * f, t, view);
        if (t == t1) break;
    }
    return *this;
}

Script& Script::check(const std::string& note_id, Millis t) { return send(NoteCheckedMsg{NoteId(note_id)}, t); }
Script& Script::ack(const std::string& tip_id, Millis t) { return send(TipAckMsg{TipId(tip_id)}, t); }
Script& Script::filter(LabelSet labels, Millis t) { return send(FilterMsg{std::move(labels)}, t); }
Script& Script::view(View v, Millis t) { return send(ViewChangeMsg{v}, t); }

Script& Script::send(ClientMessage msg, Millis t) {
    steps_.push_back({t, std::move(msg)});
    return *this;
}

std::vector<ScriptStep> Script::steps() const {
    auto out = steps_;
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
    return out;
}

Millis Script::end() const {
    Millis t = 0;
    for (const auto& s : steps_) t = std::max(t, s.t);
    return t;
}

Script Script::from_json(const nlohmann::json& j) {
    Script s;
    for (const auto& u : j.value("utterances", nlohmann::json::array())) {
        s.say(u.at("text").get<std::string>(), u.at("t_start").get<Millis>(), u.at("t_end").get<Millis>());
    }
    for (const auto& p : j.value("pointer", nlohmann::json::array())) {
        s.send(PointerMsg{pointer_sample_from_json(p)}, p.at("t").get<Millis>());
    }
    for (const auto& m : j.value("messages", nlohmann::json::array())) {
        s.send(parse_client_message(m.at("message")), m.at("t").get<Millis>());
    }
    return s;
}

void play(Engine& engine, const Script& script, std::optional<Millis> close_at) {
    for (const auto& step : script.steps()) engine.handle(step.msg, step.t);
    if (close_at) engine.close(*close_at);
}

}  // namespace thinkaloud
