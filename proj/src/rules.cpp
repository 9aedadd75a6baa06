#include "thinkaloud/rules.hpp"

#include <fstream>
#include <sstream>

namespace thinkaloud {

using nlohmann::json;
using nlohmann::ordered_json;

RuleConfig RuleConfig::defaults() {
    RuleConfig r;
    r.stopwords = {
        "a",    "an",   "the",   "and",   "or",    "but",    "so",    "of",
        "to",   "in",   "on",    "at",    "for",   "with",   "is",    "are",
        "was",  "be",   "it",    "this",  "that",  "these",  "those", "i",
        "we",   "you",  "they",  "my",    "our",   "your",   "um",    "uh",
        "just", "very", "really", "there", "here", "then",   "how",   "what",
    };
    r.discourse_markers = {"okay", "now", "next", "also", "another", "moving on", "let's"};
    r.question_openers = {"what", "why", "where", "when", "which", "who", "whom", "whose", "how"};
    r.label_keywords = {
        {ProcessLabel::ToDo, {"need to", "later", "remember"}},
        {ProcessLabel::Problem, {"problem", "problems", "issue", "issues", "concern", "concerns",
                                 "worried"}},
        {ProcessLabel::Important, {"important", "critical", "must"}},
        {ProcessLabel::DesignIntent, {"want", "wants", "goal", "goals", "so that"}},
    };
    r.action_templates = {
        {ProcessLabel::DesignIntent, {"Sketch an alternative", "Compare with the brief"}},
        {ProcessLabel::Process, {"Show related notes"}},
        {ProcessLabel::ToDo, {"Add to task list", "Set a reminder"}},
        {ProcessLabel::Important, {"Pin to canvas"}},
        {ProcessLabel::Problem, {"Flag for review", "Search for solutions"}},
        {ProcessLabel::Question, {"Look up an answer", "Ask a collaborator"}},
    };
    r.tip_templates = {
        {"window", TipCategory::ProbingQuestion, "How to handle window glare issues?"},
        {"window", TipCategory::NewIdea, "Could a window seat double as a reading nook?"},
        {"stairs", TipCategory::PotentialIssue, "Are the stairs safe for toddlers without a gate?"},
        {"kitchen", TipCategory::PotentialIssue, "Can children reach hot surfaces in the kitchen?"},
        {"kitchen", TipCategory::NewIdea, "Add a low counter so kids can help in the kitchen?"},
        {"bathroom", TipCategory::PotentialIssue, "Is the bathroom floor slip resistant for kids?"},
        {"bathroom", TipCategory::NewIdea, "Would a step stool area help kids use the bathroom sink?"},
        {"bedroom", TipCategory::ProbingQuestion, "Where will the children nap during the day?"},
        {"bedroom", TipCategory::NewIdea, "Could the bedroom wall open onto the play area?"},
        {"light", TipCategory::ProbingQuestion, "Does the play area get enough daylight?"},
        {"door", TipCategory::PotentialIssue, "Could doors pinch small fingers? Soft-close hinges help."},
        {"storage", TipCategory::NewIdea, "Use built-in storage under the windows for toys?"},
        {"play", TipCategory::NewIdea, "Zone the play area away from the entrance?"},
        {"play", TipCategory::ProbingQuestion, "Can staff see the whole play area from one spot?"},
        {"wall", TipCategory::ProbingQuestion, "Is this wall load bearing before you move it?"},
        {"entrance", TipCategory::PotentialIssue, "Is there space for strollers at the entrance?"},
        {"noise", TipCategory::ProbingQuestion, "How will noise carry between the rooms?"},
        {"balcony", TipCategory::PotentialIssue, "Is the balcony railing high enough for children?"},
        {"laundry", TipCategory::NewIdea, "Put the laundry next to the bathroom to save trips?"},
        {"corridor", TipCategory::PotentialIssue, "Is the corridor wide enough for two strollers?"},
    };
    r.nudge_prompts = {
        "What are you thinking about right now?",
        "What would you change next, and why?",
        "Can you describe the area you are looking at?",
        "What worries you most about this layout?",
    };
    return r;
}

namespace {

template <class T>
T field(const ordered_json& j, const char* key, const T& fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("rules: field '") + key + "': " + e.what());
    }
}

}  // namespace

RuleConfig RuleConfig::from_json(const ordered_json& j) {
    if (!j.is_object()) throw ConfigError("rules: top level must be an object");
    RuleConfig d = defaults();
    RuleConfig r;
    try {
        auto stop = field<std::vector<std::string>>(j, "stopwords", {d.stopwords.begin(), d.stopwords.end()});
        for (auto& w : stop) r.stopwords.insert(text::to_lower(w));
        r.discourse_markers = field(j, "discourse_markers", d.discourse_markers);
        r.split_jaccard_below = field(j, "split_jaccard_below", d.split_jaccard_below);
        r.split_min_buffer_words = field(j, "split_min_buffer_words", d.split_min_buffer_words);
        r.question_openers = field(j, "question_openers", d.question_openers);
        r.summary_max_chars = field(j, "summary_max_chars", d.summary_max_chars);
        r.merge_jaccard = field(j, "merge_jaccard", d.merge_jaccard);
        r.related_jaccard = field(j, "related_jaccard", d.related_jaccard);
        r.element_containment = field(j, "element_containment", d.element_containment);
        r.nudge_prompts = field(j, "nudge_prompts", d.nudge_prompts);

        if (j.contains("label_keywords")) {
            const auto& lk = j.at("label_keywords");
            if (!lk.is_object()) throw ConfigError("rules: field 'label_keywords' must be an object");
            for (const auto& [name, phrases] : lk.items()) {
                r.label_keywords.push_back(
                    {label_from_string(name), phrases.get<std::vector<std::string>>()});
            }
        } else {
            r.label_keywords = d.label_keywords;
        }
        if (j.contains("action_templates")) {
            const auto& at = j.at("action_templates");
            if (!at.is_object()) throw ConfigError("rules: field 'action_templates' must be an object");
            for (const auto& [name, titles] : at.items()) {
                r.action_templates[label_from_string(name)] = titles.get<std::vector<std::string>>();
            }
        } else {
            r.action_templates = d.action_templates;
        }
        if (j.contains("tip_templates")) {
            const auto& tt = j.at("tip_templates");
            if (!tt.is_array()) throw ConfigError("rules: field 'tip_templates' must be an array");
            for (const auto& t : tt) {
                try {
                    r.tip_templates.push_back({t.at("keyword").get<std::string>(),
                                               tip_category_from_string(t.at("category").get<std::string>()),
                                               t.at("text").get<std::string>()});
                } catch (const std::exception& e) {
                    throw ConfigError(std::string("rules: field 'tip_templates': ") + e.what());
                }
            }
        } else {
            r.tip_templates = d.tip_templates;
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("rules: ") + e.what());
    } catch (const ValidationError& e) {
        throw ConfigError(std::string("rules: ") + e.what());
    }
    r.validate();
    return r;
}

RuleConfig RuleConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("rules: cannot open '" + path + "'");
    ordered_json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("rules: '" + path + "' is not valid JSON: " + e.what());
    }
    return from_json(j);
}

ordered_json RuleConfig::to_json() const {
    ordered_json j;
    j["stopwords"] = std::vector<std::string>(stopwords.begin(), stopwords.end());
    j["discourse_markers"] = discourse_markers;
    j["split_jaccard_below"] = split_jaccard_below;
    j["split_min_buffer_words"] = split_min_buffer_words;
    j["question_openers"] = question_openers;
    ordered_json lk = ordered_json::object();
    for (const auto& rule : label_keywords) lk[std::string(to_string(rule.label))] = rule.phrases;
    j["label_keywords"] = lk;
    j["summary_max_chars"] = summary_max_chars;
    j["merge_jaccard"] = merge_jaccard;
    j["related_jaccard"] = related_jaccard;
    j["element_containment"] = element_containment;
    ordered_json at = ordered_json::object();
    for (const auto& [label, titles] : action_templates) at[std::string(to_string(label))] = titles;
    j["action_templates"] = at;
    ordered_json tt = ordered_json::array();
    for (const auto& t : tip_templates) {
        tt.push_back({{"keyword", t.keyword}, {"category", to_string(t.category)}, {"text", t.text}});
    }
    j["tip_templates"] = tt;
    j["nudge_prompts"] = nudge_prompts;
    return j;
}

void RuleConfig::validate() const {
    auto unit = [](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(std::string("rules: '") + name + "' must be in [0, 1]");
    };
    unit(split_jaccard_below, "split_jaccard_below");
    unit(merge_jaccard, "merge_jaccard");
    unit(related_jaccard, "related_jaccard");
    unit(element_containment, "element_containment");
    if (summary_max_chars == 0) throw ConfigError("rules: 'summary_max_chars' must be positive");
    for (const auto& m : discourse_markers) {
        if (text::words(m).empty()) throw ConfigError("rules: empty discourse marker");
    }
    for (const auto& rule : label_keywords) {
        for (const auto& p : rule.phrases) {
            if (text::words(p).empty()) throw ConfigError("rules: empty label keyword phrase");
        }
    }
    for (const auto& [label, titles] : action_templates) {
        for (const auto& t : titles) {
            if (t.empty() || text::char_count(t) > kMaxActionTitle) {
                throw ConfigError("rules: action title '" + t + "' must be 1-40 chars");
            }
        }
    }
    for (const auto& t : tip_templates) {
        if (t.keyword.empty()) throw ConfigError("rules: tip template with empty keyword");
        if (t.text.empty() || text::char_count(t.text) > kMaxTipText) {
            throw ConfigError("rules: tip text '" + t.text + "' must be 1-80 chars");
        }
    }
    if (nudge_prompts.empty()) throw ConfigError("rules: 'nudge_prompts' must not be empty");
    for (const auto& p : nudge_prompts) {
        if (p.empty() || text::char_count(p) > kMaxTipText) {
            throw ConfigError("rules: nudge prompt '" + p + "' must be 1-80 chars");
        }
    }
}

}  // namespace thinkaloud
