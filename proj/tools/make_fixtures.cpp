// Regenerates the session logs under tests/fixtures.
//
// Each fixture is a scripted session run through the engine with the rule
// oracle, so replaying it must reproduce it exactly. The script reacts to
// engine state (which tip is on screen, which notes exist) the way a
// participant would, and those reactions land in the log as ordinary input.
#include "thinkaloud/deterministic_oracle.hpp"
#include "thinkaloud/script.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

using namespace thinkaloud;
namespace fs = std::filesystem;

namespace {

struct Topic {
    std::string element;
    std::vector<std::string> words;
};

const std::vector<Topic> kTopics = {
    {"kitchen", {"counter", "marble", "cooking", "faucet", "prep", "oven"}},
    {"window", {"light", "glare", "blinds", "daylight", "morning", "view"}},
    {"stairs", {"railing", "gate", "steps", "landing", "toddlers", "safety"}},
    {"bathroom", {"sink", "tiles", "stool", "mirror", "towels", "shower"}},
    {"bedroom", {"nap", "cribs", "quiet", "curtains", "beds", "dim"}},
    {"play area", {"toys", "mats", "soft", "blocks", "climbing", "rug"}},
    {"entrance", {"strollers", "coats", "hooks", "shoes", "bench", "cubbies"}},
    {"corridor", {"width", "passing", "lighting", "handrail", "wide", "flow"}},
};

// Opening lines carry the label keywords; everything else is stopwords or
// topic words so that follow-ups stay close enough to merge.
const std::vector<std::string> kOpeners = {
    "the {e} with {a} {b} and {c} {d}",
    "what about {a} {b} at the {e} with {c} {d}?",
    "i want {a} {b} at the {e} for {c} {d}",
    "there is an issue with {a} {b} at the {e} and {c} {d}",
    "we need to sort {a} {b} at the {e} and {c} {d} later",
    "it is important that the {e} has {a} {b} and {c} {d}",
};

const std::vector<std::string> kFollowUps = {
    "so the {e} {a} {b} and {c} {d}",
    "yes {a} {b} {c} {d} at the {e}",
    "the {e} {a} and {b} with {c} {d} right",
};

std::string fill(std::string tpl, const Topic& topic, std::size_t shift) {
    const auto& w = topic.words;
    const std::pair<const char*, std::string> slots[] = {
        {"{e}", topic.element},
        {"{a}", w[shift % w.size()]},
        {"{b}", w[(shift + 1) % w.size()]},
        {"{c}", w[(shift + 2) % w.size()]},
        {"{d}", w[(shift + 3) % w.size()]},
    };
    for (const auto& [key, value] : slots) {
        for (auto pos = tpl.find(key); pos != std::string::npos; pos = tpl.find(key)) tpl.replace(pos, 3, value);
    }
    return tpl;
}

Bounds element_bounds(std::size_t i) {
    const double x = static_cast<double>(i % 4) * 300.0;
    const double y = static_cast<double>(i / 4) * 400.0;
    return {x + 20, y + 20, x + 280, y + 380, std::nullopt, std::nullopt};
}

SessionConfig daycare_config(Mode mode) {
    SessionConfig c;
    c.mode = mode;
    c.brief = "Redesign a daycare floor plan for children aged one to five and their caregivers";
    c.scene_description = "2D floor plan with eight labeled zones";
    c.canvas = {1200, 800};
    for (std::size_t i = 0; i < kTopics.size(); ++i) {
        c.scene.push_back({ElementId("e" + std::to_string(i + 1)), kTopics[i].element, element_bounds(i)});
    }
    return c;
}

// Pointer drifting across the topic's zone while the sentence is spoken.
void gesture(Script& s, std::size_t topic, Millis t0, Millis t1, std::size_t variant, View view = View::TwoD) {
    const auto b = element_bounds(topic);
    const double f = static_cast<double>(variant % 5) / 5.0;
    s.glide(b.x0 + 40 + 30 * f, b.y0 + 60, b.x1 - 60, b.y1 - 80 - 40 * f, t0, t1, 100, view);
}

using Reaction = std::function<std::optional<ClientMessage>(const Engine&)>;

struct Session {
    Script script;
    std::vector<std::pair<Millis, Reaction>> reactions;
    Millis close_at = 0;
};

std::vector<SessionEvent> run(SessionConfig config, const Session& session) {
    const auto rules = RuleConfig::defaults();
    Engine engine(std::move(config), std::make_shared<DeterministicOracle>(rules), rules, {}, nullptr,
                  RetryPolicy::no_wait());
    engine.start();
    auto steps = session.script.steps();
    std::size_t next_reaction = 0;
    auto react_until = [&](Millis t) {
        while (next_reaction < session.reactions.size() && session.reactions[next_reaction].first <= t) {
            const auto& [at, fn] = session.reactions[next_reaction++];
            engine.advance_to(at);
            if (auto msg = fn(engine)) engine.handle(*msg, at);
        }
    };
    for (const auto& step : steps) {
        react_until(step.t - 1);
        engine.handle(step.msg, step.t);
    }
    react_until(session.close_at);
    engine.close(session.close_at);
    return engine.events();
}

Reaction ack_displayed() {
    return [](const Engine& e) -> std::optional<ClientMessage> {
        if (auto id = e.tips().displayed()) return TipAckMsg{*id};
        return std::nullopt;
    };
}

Reaction check_note(std::size_t back) {
    return [back](const Engine& e) -> std::optional<ClientMessage> {
        const auto notes = e.live_notes_ordered();
        if (notes.size() <= back) return std::nullopt;
        return NoteCheckedMsg{notes[notes.size() - 1 - back].id};
    };
}

Session fifteen_minutes() {
    // Topic order revisits earlier zones so threads grow and reminders fire.
    const std::vector<std::size_t> order = {0, 1, 2, 3, 0, 1, 4, 2, 3, 0, 5, 1, 2, 4, 0, 3, 1, 5, 2, 0, 4, 1, 3};
    const std::vector<Millis> extra_gap = {0, 14000, 5000, 2000, 15000, 7000, 0, 13000, 4000, 9000, 1000, 16000};
    Session s;
    Millis t = 2000;
    std::size_t variant = 0;
    for (std::size_t block = 0; block < order.size(); ++block) {
        const auto topic = order[block];
        const std::size_t follow_ups = (block == 2 || block == 7 || block == 12 || block == 18) ? 2 : 1;
        const View view = (block >= 9 && block < 14) ? View::ThreeD : View::TwoD;
        if (block == 9) s.script.view(View::ThreeD, t - 500);
        if (block == 14) s.script.view(View::TwoD, t - 500);

        const auto opener = fill(kOpeners[block % kOpeners.size()], kTopics[topic], block);
        s.script.say(opener, t, t + 4000);
        gesture(s.script, topic, t, t + 4000, variant++, view);
        t += 4000 + 9500;
        for (std::size_t k = 0; k < follow_ups; ++k) {
            const auto line = fill(kFollowUps[(block + k) % kFollowUps.size()], kTopics[topic], block);
            s.script.say(line, t, t + 4000);
            gesture(s.script, topic, t, t + 4000, variant++, view);
            t += 4000 + 9500;
        }
        t += extra_gap[block % extra_gap.size()];
        if (block % 3 == 1) s.reactions.emplace_back(t - 1500, ack_displayed());
        if (block == 5 || block == 11 || block == 16 || block == 21) s.reactions.emplace_back(t - 800, check_note(1));
    }
    s.script.filter({ProcessLabel::Problem}, t + 2000);
    s.script.filter({ProcessLabel::Problem, ProcessLabel::Question}, t + 5000);
    s.close_at = std::max<Millis>(t + 10000, 922000);
    return s;
}

Session short_session() {
    Session s;
    s.script.say("the kitchen counter needs more prep space", 1000, 4000);
    gesture(s.script, 0, 1000, 4000, 0);
    s.script.say("and the oven sits right next to the counter", 4800, 7600);
    gesture(s.script, 0, 4800, 7600, 1);
    s.script.say("okay now the window light in the morning", 8400, 11000);
    gesture(s.script, 1, 8400, 11000, 2);
    // Silence long enough to close the window note and earn a nudge.
    s.script.say("the window glare is a problem for the nap room", 30000, 33500);
    gesture(s.script, 1, 30000, 33500, 3);
    s.script.say("window glare on the nap room beds is a real problem", 43000, 46500);
    gesture(s.script, 1, 43000, 46500, 4);
    s.script.view(View::ThreeD, 50000);
    s.script.say("what about a gate at the top of the stairs?", 60000, 63000);
    gesture(s.script, 2, 60000, 63000, 0, View::ThreeD);
    s.reactions.emplace_back(64000, ack_displayed());
    s.reactions.emplace_back(75000, check_note(0));
    s.script.filter({ProcessLabel::Problem}, 80000);
    s.script.view(View::TwoD, 82000);
    s.script.say("remember to measure the stairs landing later", 84000, 87000);
    gesture(s.script, 2, 84000, 87000, 1);
    s.close_at = 95000;
    return s;
}

Session baseline_session() {
    Session s;
    s.script.say("the kitchen counter needs more prep space", 1000, 4000);
    gesture(s.script, 0, 1000, 4000, 0);
    s.script.say("okay now the window light in the morning", 14000, 17000);
    gesture(s.script, 1, 14000, 17000, 1);
    s.script.say("is the corridor wide enough for two strollers", 40000, 43500);
    gesture(s.script, 7, 40000, 43500, 2);
    s.script.filter({ProcessLabel::Problem}, 50000);
    s.close_at = 60000;
    return s;
}

// Counts only: every event kind the statistics look at, in the amounts of
// one published session. Not a replayable engine log.
std::vector<SessionEvent> count_fixture() {
    std::vector<SessionEvent> out;
    std::uint64_t seq = 0;
    auto add = [&](Millis t, EventKind k, nlohmann::ordered_json p) { out.push_back({++seq, t, k, std::move(p)}); };
    add(0, EventKind::Config, to_json(daycare_config(Mode::Assisted)));
    const Millis duration = 922000;
    struct Quota {
        EventKind kind;
        int count;
    };
    const Quota quotas[] = {{EventKind::NoteCreated, 55}, {EventKind::NoteMerged, 27}, {EventKind::NoteChecked, 4},
                            {EventKind::TipShown, 73},    {EventKind::TipResponse, 24}};
    std::vector<std::pair<Millis, SessionEvent>> body;
    for (const auto& q : quotas) {
        for (int i = 0; i < q.count; ++i) {
            const Millis t = 1000 + (duration - 2000) * (i + 1) / (q.count + 1);
            nlohmann::ordered_json p;
            switch (q.kind) {
                case EventKind::NoteCreated: p = {{"id", "n" + std::to_string(i + 1)}}; break;
                case EventKind::NoteMerged: p = {{"into", "n" + std::to_string(2 * i + 1)}, {"from", "n" + std::to_string(2 * i + 2)}}; break;
                case EventKind::NoteChecked: p = {{"id", "n" + std::to_string(i + 1)}}; break;
                case EventKind::TipShown: p = {{"id", "tip" + std::to_string(i + 1)}, {"text", "tip"}}; break;
                default: p = {{"tip_id", "tip" + std::to_string(i + 1)}, {"note_id", "n" + std::to_string(i + 1)}}; break;
            }
            body.push_back({t, {0, t, q.kind, std::move(p)}});
        }
    }
    std::stable_sort(body.begin(), body.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [t, e] : body) add(t, e.kind, std::move(e.payload));
    add(duration, EventKind::SessionClosed, nlohmann::ordered_json::object());
    return out;
}

void write(const fs::path& path, const std::vector<SessionEvent>& events) {
    std::ofstream out(path);
    write_log(out, events);
    std::cout << path.string() << ": " << events.size() << " events\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regenerate fixture session logs"};
    std::string dir = "tests/fixtures";
    app.add_option("-d,--dir", dir, "Output directory")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    fs::create_directories(dir);
    write(fs::path(dir) / "short_session.events.jsonl", run(daycare_config(Mode::Assisted), short_session()));
    write(fs::path(dir) / "baseline.events.jsonl", run(daycare_config(Mode::Baseline), baseline_session()));
    write(fs::path(dir) / "synthetic_15min.events.jsonl", run(daycare_config(Mode::Assisted), fifteen_minutes()));
    write(fs::path(dir) / "p06_counts.stats.jsonl", count_fixture());
    return 0;
}
