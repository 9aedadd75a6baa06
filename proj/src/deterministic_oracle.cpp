#include "thinkaloud/deterministic_oracle.hpp"

#include <algorithm>

namespace thinkaloud {

DeterministicOracle::DeterministicOracle(RuleConfig rules) : rules_(std::move(rules)) {
    rules_.validate();
}

bool contains_phrase(const std::vector<std::string>& haystack,
                     const std::vector<std::string>& phrase) {
    if (phrase.empty() || phrase.size() > haystack.size()) return false;
    return std::search(haystack.begin(), haystack.end(), phrase.begin(), phrase.end()) !=
           haystack.end();
}

namespace {

bool starts_with_words(const std::vector<std::string>& words,
                       const std::vector<std::string>& prefix) {
    return !prefix.empty() && prefix.size() <= words.size() &&
           std::equal(prefix.begin(), prefix.end(), words.begin());
}

bool matches_keyword(const std::string& word, const std::string& keyword) {
    return word == keyword || word == keyword + "s";
}

}  // namespace

std::optional<SplitVerdict> DeterministicOracle::judge_split(const std::string& buffer,
                                                             const std::string& fragment) {
    const auto frag_words = text::words(fragment);
    for (const auto& marker : rules_.discourse_markers) {
        if (starts_with_words(frag_words, text::words(marker))) return SplitVerdict::NewTopic;
    }
    const auto buffer_words = text::content_words(buffer, rules_.stopwords);
    if (buffer_words.size() >= rules_.split_min_buffer_words) {
        const text::WordSet a(buffer_words.begin(), buffer_words.end());
        const auto b = text::content_word_set(fragment, rules_.stopwords);
        if (text::jaccard(a, b) < rules_.split_jaccard_below) return SplitVerdict::NewTopic;
    }
    return SplitVerdict::Continue;
}

std::optional<std::string> DeterministicOracle::summarize(const std::string& transcript) {
    return text::truncate_chars(text::first_sentence(transcript), rules_.summary_max_chars);
}

std::optional<LabelSet> DeterministicOracle::classify_labels(const std::string& transcript) {
    LabelSet labels;
    const auto words = text::words(transcript);
    const bool opener = !words.empty() &&
                        std::find(rules_.question_openers.begin(), rules_.question_openers.end(),
                                  words.front()) != rules_.question_openers.end();
    if (transcript.find('?') != std::string::npos || opener) labels.insert(ProcessLabel::Question);
    for (const auto& rule : rules_.label_keywords) {
        for (const auto& phrase : rule.phrases) {
            if (contains_phrase(words, text::words(phrase))) {
                labels.insert(rule.label);
                break;
            }
        }
    }
    if (labels.empty()) labels.insert(ProcessLabel::Process);
    return labels;
}

std::optional<std::vector<ActionSuggestion>> DeterministicOracle::suggest_actions(
    const std::string&, const LabelSet& labels) {
    // Round-robin over the labels so several labels each get a button.
    std::vector<ActionSuggestion> out;
    for (std::size_t round = 0; out.size() < kMaxActions; ++round) {
        bool any = false;
        for (ProcessLabel l : labels) {
            auto it = rules_.action_templates.find(l);
            if (it == rules_.action_templates.end() || round >= it->second.size()) continue;
            any = true;
            if (out.size() < kMaxActions) out.push_back({it->second[round]});
        }
        if (!any) break;
    }
    return out;
}

std::optional<bool> DeterministicOracle::merge_check(const std::string& previous,
                                                     const std::string& next) {
    return text::jaccard(text::content_word_set(previous, rules_.stopwords),
                         text::content_word_set(next, rules_.stopwords)) >= rules_.merge_jaccard;
}

std::optional<double> DeterministicOracle::thread_affinity(const std::string& note,
                                                           const std::string& thread_context) {
    return text::jaccard(text::content_word_set(note, rules_.stopwords),
                         text::content_word_set(thread_context, rules_.stopwords));
}

std::optional<std::vector<TipDraft>> DeterministicOracle::tip_candidates(
    const std::string& recent_transcript, const std::string&, const std::set<std::string>& exclude) {
    std::vector<TipDraft> out;
    const auto words = text::content_words(recent_transcript, rules_.stopwords);
    if (words.empty()) return out;
    std::set<TipCategory> used;
    for (const auto& t : rules_.tip_templates) {
        if (used.contains(t.category) || exclude.contains(t.text)) continue;
        const bool hit = std::any_of(words.begin(), words.end(),
                                     [&](const std::string& w) { return matches_keyword(w, t.keyword); });
        if (!hit) continue;
        used.insert(t.category);
        out.push_back({t.category, t.text});
    }
    return out;
}

std::optional<std::optional<std::size_t>> DeterministicOracle::tip_gate(
    const std::vector<TipDraft>& candidates, const std::string& current_window) {
    const auto window = text::content_word_set(current_window, rules_.stopwords);
    std::optional<std::size_t> best;
    std::size_t best_overlap = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto n = text::overlap(text::content_word_set(candidates[i].text, rules_.stopwords), window);
        if (n >= 1 && n > best_overlap) {
            best = i;
            best_overlap = n;
        }
    }
    return best;
}

std::optional<std::vector<NoteId>> DeterministicOracle::related_notes(
    const std::string& current_window, const std::vector<NoteDigest>& notes, const std::string&) {
    const auto window = text::content_word_set(current_window, rules_.stopwords);
    std::vector<std::pair<double, std::size_t>> scored;
    for (std::size_t i = 0; i < notes.size(); ++i) {
        const double s = text::jaccard(window, text::content_word_set(notes[i].transcript, rules_.stopwords));
        if (s >= rules_.related_jaccard) scored.emplace_back(s, i);
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<NoteId> out;
    for (const auto& [score, i] : scored) out.push_back(notes[i].id);
    return out;
}

std::optional<std::set<ElementId>> DeterministicOracle::element_link(const ElementLinkRequest& request) {
    return rule_based_element_links(request.transcript, request.trace, request.scene,
                                    rules_.element_containment);
}

std::set<ElementId> rule_based_element_links(const std::string& transcript,
                                             const PointerTrace& trace,
                                             const std::vector<SceneElement>& scene,
                                             double containment) {
    std::set<ElementId> out;
    const auto words = text::words(transcript);
    for (const auto& element : scene) {
        if (contains_phrase(words, text::words(element.name))) {
            out.insert(element.id);
            continue;
        }
        if (trace.empty()) continue;
        const auto inside = std::count_if(trace.samples.begin(), trace.samples.end(),
                                          [&](const PointerSample& s) { return element.bounds.contains(s); });
        const double share = static_cast<double>(inside) / static_cast<double>(trace.size());
        if (share + 1e-12 >= containment) {
            out.insert(element.id);
        }
    }
    return out;
}

}  // namespace thinkaloud
