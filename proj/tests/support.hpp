#pragma once
// Helpers shared by the unit tests.

#include "thinkaloud/deterministic_oracle.hpp"
#include "thinkaloud/engine.hpp"
#include "thinkaloud/script.hpp"

#include <atomic>
#include <memory>
#include <string>

namespace thinkaloud::testing {

// Every operation fails.
class FailingOracle : public SemanticOracle {
public:
    std::atomic<int> calls{0};

    std::optional<SplitVerdict> judge_split(const std::string&, const std::string&) override { return fail<SplitVerdict>(); }
    std::optional<std::string> summarize(const std::string&) override { return fail<std::string>(); }
    std::optional<LabelSet> classify_labels(const std::string&) override { return fail<LabelSet>(); }
    std::optional<std::vector<ActionSuggestion>> suggest_actions(const std::string&, const LabelSet&) override {
        return fail<std::vector<ActionSuggestion>>();
    }
    std::optional<bool> merge_check(const std::string&, const std::string&) override { return fail<bool>(); }
    std::optional<double> thread_affinity(const std::string&, const std::string&) override { return fail<double>(); }
    std::optional<std::vector<TipDraft>> tip_candidates(const std::string&, const std::string&,
                                                        const std::set<std::string>&) override {
        return fail<std::vector<TipDraft>>();
    }
    std::optional<std::optional<std::size_t>> tip_gate(const std::vector<TipDraft>&, const std::string&) override {
        return fail<std::optional<std::size_t>>();
    }
    std::optional<std::vector<NoteId>> related_notes(const std::string&, const std::vector<NoteDigest>&,
                                                     const std::string&) override {
        return fail<std::vector<NoteId>>();
    }
    std::optional<std::set<ElementId>> element_link(const ElementLinkRequest&) override {
        return fail<std::set<ElementId>>();
    }

private:
    template <class T>
    std::optional<T> fail() {
        ++calls;
        return std::nullopt;
    }
};

// Rule oracle that counts split requests.
class CountingOracle : public DeterministicOracle {
public:
    using DeterministicOracle::DeterministicOracle;
    int split_calls = 0;

    std::optional<SplitVerdict> judge_split(const std::string& b, const std::string& f) override {
        ++split_calls;
        return DeterministicOracle::judge_split(b, f);
    }
};

inline const RuleConfig& rules() {
    static const RuleConfig r = RuleConfig::defaults();
    return r;
}

inline std::shared_ptr<DeterministicOracle> rule_oracle() { return std::make_shared<DeterministicOracle>(rules()); }

inline SessionConfig basic_config(Mode mode = Mode::Assisted) {
    SessionConfig c;
    c.mode = mode;
    c.brief = "Redesign a daycare floor plan";
    c.canvas = {1000, 800};
    c.scene.push_back({ElementId("e1"), "window", {100, 100, 300, 300, std::nullopt, std::nullopt}});
    c.scene.push_back({ElementId("e2"), "Laundry", {600, 100, 800, 300, std::nullopt, std::nullopt}});
    return c;
}

inline std::unique_ptr<Engine> make_engine(SessionConfig c = basic_config(),
                                           std::shared_ptr<SemanticOracle> oracle = nullptr) {
    if (!oracle) oracle = rule_oracle();
    auto e = std::make_unique<Engine>(std::move(c), std::move(oracle), rules(), Engine::EventSink{}, nullptr,
                                      RetryPolicy::no_wait());
    e->start();
    return e;
}

inline std::size_t count(const std::vector<SessionEvent>& events, EventKind k) {
    std::size_t n = 0;
    for (const auto& e : events) n += e.kind == k;
    return n;
}

inline TranscriptFragment final_frag(std::string text, Millis t0, Millis t1) { return {std::move(text), t0, t1, true}; }

inline std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

}  // namespace thinkaloud::testing
