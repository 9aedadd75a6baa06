#pragma once
// Scripted speech and pointer input, standing in for a live transcriber.
//
// Each utterance becomes a one-word partial at its onset followed by the
// final fragment at its end, which is how streaming recognizers report
// speech.

#include "thinkaloud/engine.hpp"

#include <nlohmann/json.hpp>
#include <optional>
#include <vector>

namespace thinkaloud {

struct ScriptStep {
    Millis t = 0;
    ClientMessage msg;
};

class Script {
public:
    Script& say(const std::string& text, Millis t_start, Millis t_end);
    Script& point(double x, double y, Millis t, View view = View::TwoD);
    // Samples every `step` ms along the segment, both ends included.
    Script& glide(double x0, double y0, double x1, double y1, Millis t0, Millis t1, Millis step = 100,
                  View view = View::TwoD);
    Script& check(const std::string& note_id, Millis t);
    Script& ack(const std::string& tip_id, Millis t);
    Script& filter(LabelSet labels, Millis t);
    Script& view(View v, Millis t);
    Script& send(ClientMessage msg, Millis t);

    // Steps in time order; ties keep insertion order.
    std::vector<ScriptStep> steps() const;
    Millis end() const;

    // {"utterances": [{text, t_start, t_end}], "pointer": [{x, y, t, view}],
    //  "messages": [{t, message}]}
    static Script from_json(const nlohmann::json& j);

private:
    std::vector<ScriptStep> steps_;
};

// Plays every step through `engine`, then closes at `close_at` if given.
void play(Engine& engine, const Script& script, std::optional<Millis> close_at = std::nullopt);

}  // namespace thinkaloud
