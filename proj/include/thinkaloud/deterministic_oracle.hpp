#pragma once
// Rule-based oracle. Every answer is a pure function of its inputs and the
// rule tables, so sessions driven by it replay byte for byte.

#include "thinkaloud/oracle.hpp"
#include "thinkaloud/rules.hpp"

namespace thinkaloud {

class DeterministicOracle : public SemanticOracle {
public:
    explicit DeterministicOracle(RuleConfig rules);

    const RuleConfig& rules() const { return rules_; }

    std::optional<SplitVerdict> judge_split(const std::string& buffer,
                                            const std::string& fragment) override;
    std::optional<std::string> summarize(const std::string& transcript) override;
    std::optional<LabelSet> classify_labels(const std::string& transcript) override;
    std::optional<std::vector<ActionSuggestion>> suggest_actions(const std::string& transcript,
                                                                 const LabelSet& labels) override;
    std::optional<bool> merge_check(const std::string& previous, const std::string& next) override;
    std::optional<double> thread_affinity(const std::string& note,
                                          const std::string& thread_context) override;
    std::optional<std::vector<TipDraft>> tip_candidates(const std::string& recent_transcript,
                                                        const std::string& brief,
                                                        const std::set<std::string>& exclude) override;
    std::optional<std::optional<std::size_t>> tip_gate(const std::vector<TipDraft>& candidates,
                                                       const std::string& current_window) override;
    std::optional<std::vector<NoteId>> related_notes(const std::string& current_window,
                                                     const std::vector<NoteDigest>& notes,
                                                     const std::string& brief) override;
    std::optional<std::set<ElementId>> element_link(const ElementLinkRequest& request) override;

private:
    RuleConfig rules_;
};

// Element-linking rule shared with degraded results of other providers:
// an element is linked when its name appears as a whole-word phrase in the
// transcript, or when at least `containment` of the trace samples fall
// inside its bounds.
std::set<ElementId> rule_based_element_links(const std::string& transcript,
                                             const PointerTrace& trace,
                                             const std::vector<SceneElement>& scene,
                                             double containment);

// True when the word sequence `phrase` occurs contiguously in `haystack`.
bool contains_phrase(const std::vector<std::string>& haystack,
                     const std::vector<std::string>& phrase);

}  // namespace thinkaloud
