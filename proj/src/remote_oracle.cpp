#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "thinkaloud/remote_oracle.hpp"

#include "thinkaloud/text.hpp"

#include <httplib.h>
#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

namespace thinkaloud {

using json = nlohmann::json;

namespace {

const char* const kOps[] = {"judge_split",     "summarize",      "classify_labels", "suggest_actions",
                            "merge_check",     "thread_affinity", "tip_candidates",  "tip_gate",
                            "related_notes",   "element_link"};

std::string env_or(const char* name, std::string fallback) {
    const char* v = std::getenv(name);
    return v && *v ? std::string(v) : fallback;
}

json string_array(std::optional<std::size_t> max_items = std::nullopt,
                  std::optional<std::size_t> max_length = std::nullopt) {
    json item = {{"type", "string"}, {"minLength", 1}};
    if (max_length) item["maxLength"] = *max_length;
    json j = {{"type", "array"}, {"items", item}};
    if (max_items) j["maxItems"] = *max_items;
    return j;
}

json object_schema(json properties) {
    json required = json::array();
    for (const auto& [k, _] : properties.items()) required.push_back(k);
    return {{"type", "object"},
            {"properties", std::move(properties)},
            {"required", std::move(required)},
            {"additionalProperties", false}};
}

bool has_type(const json& v, const std::string& type) {
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "number") return v.is_number();
    if (type == "integer") return v.is_number_integer();
    if (type == "boolean") return v.is_boolean();
    if (type == "null") return v.is_null();
    return false;
}

// The subset of JSON Schema used by response_schema().
std::optional<std::string> violation(const json& v, const json& s, const std::string& at) {
    if (auto t = s.find("type"); t != s.end()) {
        bool ok = false;
        if (t->is_array()) {
            for (const auto& one : *t) ok = ok || has_type(v, one.get<std::string>());
        } else {
            ok = has_type(v, t->get<std::string>());
        }
        if (!ok) return at + ": expected " + t->dump();
    }
    if (auto e = s.find("enum"); e != s.end()) {
        if (std::find(e->begin(), e->end(), v) == e->end()) return at + ": not one of " + e->dump();
    }
    if (v.is_string()) {
        const auto n = text::char_count(v.get<std::string>());
        if (s.contains("minLength") && n < s["minLength"].get<std::size_t>()) return at + ": too short";
        if (s.contains("maxLength") && n > s["maxLength"].get<std::size_t>()) return at + ": too long";
    }
    if (v.is_number()) {
        const double d = v.get<double>();
        if (s.contains("minimum") && d < s["minimum"].get<double>()) return at + ": below minimum";
        if (s.contains("maximum") && d > s["maximum"].get<double>()) return at + ": above maximum";
    }
    if (v.is_array()) {
        if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>()) return at + ": too many items";
        if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) return at + ": too few items";
        if (auto items = s.find("items"); items != s.end()) {
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (auto err = violation(v[i], *items, at + "[" + std::to_string(i) + "]")) return err;
            }
        }
    }
    if (v.is_object()) {
        const json props = s.value("properties", json::object());
        for (const auto& r : s.value("required", json::array())) {
            if (!v.contains(r.get<std::string>())) return at + ": missing " + r.get<std::string>();
        }
        for (const auto& [k, child] : v.items()) {
            if (props.contains(k)) {
                if (auto err = violation(child, props[k], at + "." + k)) return err;
            } else if (!s.value("additionalProperties", true)) {
                return at + ": unexpected " + k;
            }
        }
    }
    return std::nullopt;
}

json label_names() {
    json names = json::array();
    for (auto l : kAllLabels) names.push_back(std::string(to_string(l)));
    return names;
}

json digest_json(const NoteDigest& d) {
    json j = {{"id", d.id.value}, {"transcript", d.transcript}};
    if (d.summary) j["summary"] = *d.summary;
    return j;
}

class HttpTransport final : public Transport {
public:
    HttpTransport(RemoteOracleConfig config) : config_(std::move(config)) {
        // Split "https://host[:port]/prefix" into origin and path prefix.
        const auto scheme_end = config_.base_url.find("://");
        const auto path_start =
            config_.base_url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
        origin_ = config_.base_url.substr(0, path_start);
        path_ = (path_start == std::string::npos ? std::string() : config_.base_url.substr(path_start));
        while (!path_.empty() && path_.back() == '/') path_.pop_back();
        path_ += "/chat/completions";
    }

    std::optional<std::string> post(const std::string& body) override {
        httplib::Client client(origin_);
        client.set_connection_timeout(config_.timeout);
        client.set_read_timeout(config_.timeout);
        client.set_write_timeout(config_.timeout);
        if (!config_.api_key.empty()) client.set_bearer_token_auth(config_.api_key);
        auto res = client.Post(path_, body, "application/json");
        if (!res || res->status != 200) return std::nullopt;
        return res->body;
    }

private:
    RemoteOracleConfig config_;
    std::string origin_;
    std::string path_;
};

}  // namespace

RemoteOracleConfig RemoteOracleConfig::from_env() {
    RemoteOracleConfig c;
    c.base_url = env_or("THINKALOUD_ORACLE_URL", "https://api.openai.com/v1");
    c.api_key = env_or("THINKALOUD_API_KEY", "");
    c.model = env_or("THINKALOUD_ORACLE_MODEL", c.model);
    return c;
}

std::shared_ptr<Transport> make_http_transport(const RemoteOracleConfig& config) {
    return std::make_shared<HttpTransport>(config);
}

PromptSet load_prompts(const std::string& dir) {
    PromptSet out;
    for (const char* op : kOps) {
        const auto path = dir + "/" + op + ".v1.txt";
        std::ifstream in(path);
        if (!in) throw std::runtime_error("missing prompt template " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        out[op] = ss.str();
    }
    return out;
}

std::string base64_encode(const std::vector<unsigned char>& bytes) {
    std::string out(4 * ((bytes.size() + 2) / 3), '\0');
    const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                                  static_cast<int>(bytes.size()));
    out.resize(static_cast<std::size_t>(n));
    return out;
}

json response_schema(const std::string& op) {
    if (op == "judge_split") return object_schema({{"verdict", {{"type", "string"}, {"enum", json::array({"continue", "new_topic"})}}}});
    if (op == "summarize") {
        return object_schema({{"summary", {{"type", "string"}, {"minLength", 1}, {"maxLength", 80}}}});
    }
    if (op == "classify_labels") {
        return object_schema({{"labels", {{"type", "array"},
                                          {"minItems", 1},
                                          {"items", {{"type", "string"}, {"enum", label_names()}}}}}});
    }
    if (op == "suggest_actions") return object_schema({{"actions", string_array(kMaxActions, kMaxActionTitle)}});
    if (op == "merge_check") return object_schema({{"merge", {{"type", "boolean"}}}});
    if (op == "thread_affinity") {
        return object_schema({{"affinity", {{"type", "number"}, {"minimum", 0}, {"maximum", 1}}}});
    }
    if (op == "tip_candidates") {
        json categories = json::array();
        for (auto c : {TipCategory::PotentialIssue, TipCategory::NewIdea, TipCategory::ProbingQuestion}) {
            categories.push_back(std::string(to_string(c)));
        }
        json tip = object_schema({{"category", {{"type", "string"}, {"enum", categories}}},
                                  {"text", {{"type", "string"}, {"minLength", 1}, {"maxLength", kMaxTipText}}}});
        return object_schema({{"tips", {{"type", "array"}, {"maxItems", 3}, {"items", tip}}}});
    }
    if (op == "tip_gate") return object_schema({{"index", {{"type", json::array({"integer", "null"})}, {"minimum", 0}}}});
    if (op == "related_notes") return object_schema({{"note_ids", string_array()}});
    if (op == "element_link") return object_schema({{"element_ids", string_array()}});
    throw std::invalid_argument("unknown oracle operation '" + op + "'");
}

RemoteOracle::RemoteOracle(RemoteOracleConfig config, std::shared_ptr<Transport> transport, PromptSet prompts,
                           Warn warn)
    : config_(std::move(config)), transport_(std::move(transport)), prompts_(std::move(prompts)), warn_(std::move(warn)) {
    if (!transport_) throw std::invalid_argument("remote oracle needs a transport");
    for (const char* op : kOps) {
        if (!prompts_.contains(op)) throw std::invalid_argument(std::string("no prompt for ") + op);
    }
}

void RemoteOracle::warn(const std::string& op, const std::string& what) const {
    if (warn_) warn_(op + ": " + what);
}

json RemoteOracle::build_request(const std::string& op, const json& input, const std::vector<unsigned char>& png) const {
    json user;
    if (png.empty()) {
        user = input.dump();
    } else {
        user = json::array({{{"type", "text"}, {"text", input.dump()}},
                            {{"type", "image_url"},
                             {"image_url", {{"url", "data:image/png;base64," + base64_encode(png)}}}}});
    }
    return {{"model", config_.model},
            {"temperature", 0},
            {"messages", json::array({{{"role", "system"}, {"content", prompts_.at(op)}},
                                      {{"role", "user"}, {"content", user}}})},
            {"response_format",
             {{"type", "json_schema"},
              {"json_schema", {{"name", op}, {"strict", true}, {"schema", response_schema(op)}}}}}};
}

std::optional<json> RemoteOracle::ask(const std::string& op, const json& input, const std::vector<unsigned char>& png) {
    const auto body = build_request(op, input, png).dump();

    // The transport may ignore its own timeouts; the caller never waits
    // longer than the configured bound. A late reply is dropped.
    auto promise = std::make_shared<std::promise<std::optional<std::string>>>();
    auto reply = promise->get_future();
    std::thread([transport = transport_, body, promise] {
        try {
            promise->set_value(transport->post(body));
        } catch (...) {
            promise->set_value(std::nullopt);
        }
    }).detach();

    if (reply.wait_for(config_.timeout) != std::future_status::ready) {
        warn(op, "timed out");
        return std::nullopt;
    }
    const auto raw = reply.get();
    if (!raw) {
        warn(op, "request failed");
        return std::nullopt;
    }
    try {
        const auto envelope = json::parse(*raw);
        const auto& content = envelope.at("choices").at(0).at("message").at("content");
        auto answer = json::parse(content.get<std::string>());
        if (auto err = violation(answer, response_schema(op), "$")) {
            warn(op, "schema violation at " + *err);
            return std::nullopt;
        }
        return answer;
    } catch (const std::exception& e) {
        warn(op, std::string("unusable response: ") + e.what());
        return std::nullopt;
    }
}

std::optional<SplitVerdict> RemoteOracle::judge_split(const std::string& buffer, const std::string& fragment) {
    auto a = ask("judge_split", {{"buffer", buffer}, {"fragment", fragment}});
    if (!a) return std::nullopt;
    return (*a)["verdict"] == "new_topic" ? SplitVerdict::NewTopic : SplitVerdict::Continue;
}

std::optional<std::string> RemoteOracle::summarize(const std::string& transcript) {
    auto a = ask("summarize", {{"transcript", transcript}});
    if (!a) return std::nullopt;
    return (*a)["summary"].get<std::string>();
}

std::optional<LabelSet> RemoteOracle::classify_labels(const std::string& transcript) {
    auto a = ask("classify_labels", {{"transcript", transcript}});
    if (!a) return std::nullopt;
    LabelSet out;
    for (const auto& l : (*a)["labels"]) out.insert(label_from_string(l.get<std::string>()));
    return out;
}

std::optional<std::vector<ActionSuggestion>> RemoteOracle::suggest_actions(const std::string& transcript,
                                                                           const LabelSet& labels) {
    json names = json::array();
    for (auto l : labels) names.push_back(std::string(to_string(l)));
    auto a = ask("suggest_actions", {{"transcript", transcript}, {"labels", names}});
    if (!a) return std::nullopt;
    std::vector<ActionSuggestion> out;
    for (const auto& t : (*a)["actions"]) out.push_back({t.get<std::string>()});
    return out;
}

std::optional<bool> RemoteOracle::merge_check(const std::string& previous, const std::string& next) {
    auto a = ask("merge_check", {{"previous", previous}, {"next", next}});
    if (!a) return std::nullopt;
    return (*a)["merge"].get<bool>();
}

std::optional<double> RemoteOracle::thread_affinity(const std::string& note, const std::string& thread_context) {
    auto a = ask("thread_affinity", {{"note", note}, {"thread", thread_context}});
    if (!a) return std::nullopt;
    return (*a)["affinity"].get<double>();
}

std::optional<std::vector<TipDraft>> RemoteOracle::tip_candidates(const std::string& recent_transcript,
                                                                  const std::string& brief,
                                                                  const std::set<std::string>& exclude) {
    auto a = ask("tip_candidates", {{"brief", brief}, {"recent", recent_transcript}, {"exclude", exclude}});
    if (!a) return std::nullopt;
    std::vector<TipDraft> out;
    for (const auto& t : (*a)["tips"]) {
        out.push_back({tip_category_from_string(t["category"].get<std::string>()), t["text"].get<std::string>()});
    }
    return out;
}

std::optional<std::optional<std::size_t>> RemoteOracle::tip_gate(const std::vector<TipDraft>& candidates,
                                                                  const std::string& current_window) {
    json list = json::array();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        list.push_back({{"index", i}, {"category", to_string(candidates[i].category)}, {"text", candidates[i].text}});
    }
    auto a = ask("tip_gate", {{"candidates", list}, {"current", current_window}});
    if (!a) return std::nullopt;
    const auto& idx = (*a)["index"];
    if (idx.is_null()) return std::optional<std::size_t>{};
    const auto i = idx.get<std::size_t>();
    if (i >= candidates.size()) {
        warn("tip_gate", "index out of range");
        return std::nullopt;
    }
    return std::optional<std::size_t>{i};
}

std::optional<std::vector<NoteId>> RemoteOracle::related_notes(const std::string& current_window,
                                                               const std::vector<NoteDigest>& notes,
                                                               const std::string& brief) {
    json list = json::array();
    for (const auto& n : notes) list.push_back(digest_json(n));
    auto a = ask("related_notes", {{"current", current_window}, {"brief", brief}, {"notes", list}});
    if (!a) return std::nullopt;
    std::vector<NoteId> out;
    for (const auto& id : (*a)["note_ids"]) out.emplace_back(id.get<std::string>());
    return out;
}

std::optional<std::set<ElementId>> RemoteOracle::element_link(const ElementLinkRequest& r) {
    json scene = json::array();
    for (const auto& e : r.scene) {
        scene.push_back({{"id", e.id.value},
                         {"name", e.name},
                         {"bounds", {{"x0", e.bounds.x0}, {"y0", e.bounds.y0}, {"x1", e.bounds.x1}, {"y1", e.bounds.y1}}}});
    }
    json markers = json::array();
    for (const auto& m : r.overlay.markers) {
        markers.push_back({{"x", m.x}, {"y", m.y}, {"radius", m.radius}, {"utterance", m.fragment_index}});
    }
    auto a = ask("element_link",
                 {{"transcript", r.transcript}, {"timeline", r.overlay.timeline}, {"markers", markers}, {"scene", scene}},
                 r.overlay_png);
    if (!a) return std::nullopt;
    std::set<ElementId> out;
    for (const auto& id : (*a)["element_ids"]) out.emplace(id.get<std::string>());
    return out;
}

}  // namespace thinkaloud
