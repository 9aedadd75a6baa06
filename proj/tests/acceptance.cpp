// Prints one PASS/FAIL line per acceptance criterion; exits non-zero on any FAIL.

#include "properties.hpp"
#include "thinkaloud/analyzer.hpp"
#include "thinkaloud/note_pipeline.hpp"
#include "thinkaloud/replay.hpp"
#include "thinkaloud/script.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace thinkaloud;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Outcome table1() {
    struct Row {
        const char* id;
        std::size_t checked, responses;
        analysis::Engagement pattern;
    };
    using E = analysis::Engagement;
    const Row rows[] = {
        {"P01", 11, 2, E::NoteExplorer},        {"P02", 0, 3, E::DocumentationOnly},
        {"P03", 0, 1, E::DocumentationOnly},    {"P04", 6, 0, E::NoteExplorer},
        {"P05", 0, 2, E::DocumentationOnly},    {"P06", 4, 24, E::HeavyIntegrator},
        {"P07", 0, 3, E::DocumentationOnly},    {"P08", 0, 1, E::DocumentationOnly},
        {"P09", 0, 1, E::DocumentationOnly},    {"P10", 6, 12, E::HeavyIntegrator},
        {"P11", 0, 1, E::DocumentationOnly},    {"P12", 1, 7, E::TipDrivenElaborator},
    };
    const auto t0 = Clock::now();
    int ok = 0;
    std::string misses;
    for (const auto& r : rows) {
        if (analysis::classify_engagement(r.checked, r.responses) == r.pattern) {
            ++ok;
        } else {
            misses += std::string(" ") + r.id;
        }
    }
    const double s = seconds_since(t0);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%d/12 rows%s, %.3f s", ok, misses.c_str(), s);
    return {ok == 12 && s < 1.0, buf};
}

std::size_t notes_for_silence(Millis silence, const RuleConfig& rules) {
    SessionConfig c;
    c.canvas = {1000, 800};
    Engine e(c, std::make_shared<DeterministicOracle>(rules), rules, {}, nullptr, RetryPolicy::no_wait());
    e.start();
    play(e, Script().say("the window", 0, 1000).say("the door", 1000 + silence, 2000 + silence), 60000);
    const auto r = replay(e.events(), rules);
    if (!r.identical()) return 0;
    std::size_t n = 0;
    for (const auto& ev : r.regenerated()) n += ev.kind == EventKind::NoteCreated;
    return n;
}

Outcome pause_boundary(const RuleConfig& rules) {
    const auto a = notes_for_silence(7900, rules);
    const auto b = notes_for_silence(8100, rules);
    return {a == 1 && b == 2, "7.9 s -> " + std::to_string(a) + " note(s), 8.1 s -> " + std::to_string(b) + " note(s)"};
}

Outcome determinism(const RuleConfig& rules) {
    const char* fixtures[] = {"short_session.events.jsonl", "baseline.events.jsonl", "synthetic_15min.events.jsonl"};
    bool pass = true;
    std::string detail;
    for (const char* name : fixtures) {
        const auto t0 = Clock::now();
        std::string state;
        try {
            const auto r = replay_file(std::string(FIXTURE_DIR) + "/" + name, rules);
            const double s = seconds_since(t0);
            const bool same = serialize_log(r.original) == serialize_log(r.regenerated());
            pass = pass && same && s < 10.0;
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s %s %.2f s", name, same ? "identical" : "DIVERGES", s);
            state = buf;
            if (std::string(name) == "synthetic_15min.events.jsonl") {
                const auto st = analysis::session_stats(r.regenerated());
                const bool created_ok = std::fabs(st.notes_created - 50.3) <= 0.2 * 50.3;
                const bool merged_ok = std::fabs(st.notes_merged - 27.6) <= 0.2 * 27.6;
                pass = pass && created_ok && merged_ok;
                state += " (created " + std::to_string(st.notes_created) + ", merged " +
                         std::to_string(st.notes_merged) + ")";
            }
        } catch (const std::exception& e) {
            pass = false;
            state = std::string(name) + " error: " + e.what();
        }
        detail += (detail.empty() ? "" : "; ") + state;
    }
    return {pass, detail};
}

Outcome run_property(const char* what, std::uint32_t n, const std::function<props::Failure(std::uint32_t)>& check) {
    for (std::uint32_t seed = 1; seed <= n; ++seed) {
        if (auto f = check(seed)) return {false, *f};
    }
    return {true, std::to_string(n) + " " + what};
}

Outcome anchors() {
    constexpr CanvasSize canvas{1000, 800};
    auto p = [](double x, double y, Millis t) { return PointerSample{x, y, t, View::TwoD, std::nullopt}; };
    struct Case {
        PointerTrace trace;
        Millis t1;
        double x, y;
    };
    const Case cases[] = {
        // Equal dwell between two points.
        {{{p(0, 0, 0), p(10, 0, 1000)}}, 2000, 5.0, 0.0},
        // Dwell 1000, 2000, 1000: x = (0 + 8*2 + 16) / 4, y = (4 + 0 + 0) / 4.
        {{{p(0, 4, 0), p(8, 0, 1000), p(16, 0, 3000)}}, 4000, 8.0, 1.0},
        // Last sample sits past the window end and carries no weight.
        {{{p(2, 2, 0), p(6, 10, 500), p(100, 100, 1500)}}, 1000, 4.0, 6.0},
    };
    double worst = 0;
    for (const auto& c : cases) {
        const auto a = compute_anchor(c.trace, 0, c.t1, View::TwoD, std::nullopt, canvas);
        if (a.confidence != AnchorConfidence::FromTrace) return {false, "anchor not from trace"};
        worst = std::max({worst, std::fabs(a.x - c.x), std::fabs(a.y - c.y)});
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "3 traces, max error %.3g", worst);
    return {worst <= 1e-9, buf};
}

}  // namespace

int main() {
    const auto rules = RuleConfig::defaults();
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "engagement classifier reproduces the 12 labeled rows", table1},
        {2, "pause promotion boundary", [&] { return pause_boundary(rules); }},
        {3, "fixture replay determinism", [&] { return determinism(rules); }},
        {4, "transcript conservation",
         [&] {
             return run_property("random streams", 1000,
                                 [&](std::uint32_t s) { return props::transcript_conservation(s, rules); });
         }},
        {5, "thread partition and filter laws",
         [&] {
             return run_property("random sessions", 60,
                                 [&](std::uint32_t s) { return props::thread_partition(s, rules); });
         }},
        {6, "tip rate limit",
         [&] {
             return run_property("random schedules", 60,
                                 [&](std::uint32_t s) { return props::tip_rate_limit(s, rules); });
         }},
        {7, "wpm equals regex token walk",
         [&] { return run_property("random transcripts", 200, props::wpm_equivalence); }},
        {8, "baseline purity",
         [&] {
             return run_property("random streams", 100, [&](std::uint32_t s) { return props::baseline_purity(s, rules); });
         }},
        {9, "dwell-weighted anchor math", anchors},
    };

    bool all = true;
    for (const auto& c : criteria) {
        Outcome o{false, ""};
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << o.detail << "\n";
    }
    return all ? 0 : 1;
}
