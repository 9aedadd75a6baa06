#pragma once
// Rebuilds a session from the input events of its log.

#include "thinkaloud/engine.hpp"

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace thinkaloud {

struct ReplayResult {
    std::vector<SessionEvent> original;
    std::unique_ptr<Engine> engine;

    const std::vector<SessionEvent>& regenerated() const { return engine->events(); }
    // Index of the first line that differs, or nullopt when byte-identical.
    std::optional<std::size_t> first_divergence() const;
    bool identical() const { return !first_divergence(); }
};

// Input event back to the client message that produced it. Throws
// std::invalid_argument for non-message kinds.
ClientMessage message_from_event(const SessionEvent& e);

// Feeds every input event of `log` through a fresh engine backed by
// `oracle` (the rule oracle when null) with inline jobs. Throws LogError
// for a corrupt log, including a log that does not start with a config
// event.
ReplayResult replay(std::vector<SessionEvent> log, const RuleConfig& rules,
                    std::shared_ptr<SemanticOracle> oracle = nullptr);
ReplayResult replay(std::istream& in, const RuleConfig& rules, std::shared_ptr<SemanticOracle> oracle = nullptr);
ReplayResult replay_file(const std::string& path, const RuleConfig& rules,
                         std::shared_ptr<SemanticOracle> oracle = nullptr);

}  // namespace thinkaloud
