#pragma once
// Oracle backed by an OpenAI-compatible chat-completion endpoint.
//
// Every operation is one request carrying the operation's prompt as the
// system message, its inputs as a JSON user message and a strict JSON
// schema for the answer. Anything that is late, unreachable or does not
// validate comes back as nullopt.

#include "thinkaloud/oracle.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

namespace thinkaloud {

class Transport {
public:
    virtual ~Transport() = default;
    // POSTs a JSON body; returns the response body on HTTP 200.
    virtual std::optional<std::string> post(const std::string& body) = 0;
};

struct RemoteOracleConfig {
    // Base URL up to the API version, e.g. https://api.openai.com/v1
    std::string base_url;
    std::string api_key;
    std::string model = "gpt-4o";
    std::chrono::milliseconds timeout{2000};
    std::string prompt_dir = "assets/prompts";

    // THINKALOUD_ORACLE_URL, THINKALOUD_API_KEY, THINKALOUD_ORACLE_MODEL.
    static RemoteOracleConfig from_env();
};

// httplib-based transport to <base_url>/chat/completions.
std::shared_ptr<Transport> make_http_transport(const RemoteOracleConfig& config);

// Operation name -> system prompt.
using PromptSet = std::map<std::string, std::string>;

// Loads <dir>/<op>.v1.txt for every operation. Throws std::runtime_error
// naming the first missing file.
PromptSet load_prompts(const std::string& dir);

class RemoteOracle final : public SemanticOracle {
public:
    using Warn = std::function<void(const std::string&)>;

    RemoteOracle(RemoteOracleConfig config, std::shared_ptr<Transport> transport, PromptSet prompts,
                 Warn warn = {});

    std::optional<SplitVerdict> judge_split(const std::string& buffer, const std::string& fragment) override;
    std::optional<std::string> summarize(const std::string& transcript) override;
    std::optional<LabelSet> classify_labels(const std::string& transcript) override;
    std::optional<std::vector<ActionSuggestion>> suggest_actions(const std::string& transcript,
                                                                 const LabelSet& labels) override;
    std::optional<bool> merge_check(const std::string& previous, const std::string& next) override;
    std::optional<double> thread_affinity(const std::string& note, const std::string& thread_context) override;
    std::optional<std::vector<TipDraft>> tip_candidates(const std::string& recent_transcript,
                                                        const std::string& brief,
                                                        const std::set<std::string>& exclude) override;
    std::optional<std::optional<std::size_t>> tip_gate(const std::vector<TipDraft>& candidates,
                                                       const std::string& current_window) override;
    std::optional<std::vector<NoteId>> related_notes(const std::string& current_window,
                                                     const std::vector<NoteDigest>& notes,
                                                     const std::string& brief) override;
    std::optional<std::set<ElementId>> element_link(const ElementLinkRequest& request) override;

    // Request body for `op`, exposed for tests.
    nlohmann::json build_request(const std::string& op, const nlohmann::json& input,
                                 const std::vector<unsigned char>& png = {}) const;

private:
    // Parsed structured answer, or nullopt on timeout, transport failure or
    // an unparsable envelope.
    std::optional<nlohmann::json> ask(const std::string& op, const nlohmann::json& input,
                                      const std::vector<unsigned char>& png = {});
    void warn(const std::string& op, const std::string& what) const;

    RemoteOracleConfig config_;
    std::shared_ptr<Transport> transport_;
    PromptSet prompts_;
    Warn warn_;
};

// JSON schema each operation's answer must satisfy.
nlohmann::json response_schema(const std::string& op);

std::string base64_encode(const std::vector<unsigned char>& bytes);

}  // namespace thinkaloud
