#pragma once
// Rule tables for the deterministic oracle and the engine's text heuristics.

#include "thinkaloud/model.hpp"
#include "thinkaloud/text.hpp"

#include <map>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace thinkaloud {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct KeywordRule {
    ProcessLabel label = ProcessLabel::Process;
    // Single words or space-separated phrases, matched on whole words.
    std::vector<std::string> phrases;
};

struct TipTemplate {
    std::string keyword;
    TipCategory category = TipCategory::ProbingQuestion;
    std::string text;
};

struct RuleConfig {
    text::WordSet stopwords;

    std::vector<std::string> discourse_markers;
    double split_jaccard_below = 0.1;
    std::size_t split_min_buffer_words = 8;

    // A transcript opening with one of these words is a question.
    std::vector<std::string> question_openers;
    std::vector<KeywordRule> label_keywords;

    std::size_t summary_max_chars = 80;
    double merge_jaccard = 0.5;
    double related_jaccard = 0.3;
    double element_containment = 0.2;

    std::map<ProcessLabel, std::vector<std::string>> action_templates;
    std::vector<TipTemplate> tip_templates;
    std::vector<std::string> nudge_prompts;

    static RuleConfig defaults();
    // Throws ConfigError naming the offending field.
    static RuleConfig from_json(const nlohmann::ordered_json& j);
    static RuleConfig load(const std::string& path);

    nlohmann::ordered_json to_json() const;
    void validate() const;
};

}  // namespace thinkaloud
