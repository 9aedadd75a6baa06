#include "thinkaloud/replay.hpp"

#include "thinkaloud/deterministic_oracle.hpp"

#include <algorithm>
#include <fstream>

namespace thinkaloud {

std::optional<std::size_t> ReplayResult::first_divergence() const {
    const auto& again = regenerated();
    const std::size_t n = std::min(original.size(), again.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (to_jsonl(original[i]) != to_jsonl(again[i])) return i;
    }
    if (original.size() != again.size()) return n;
    return std::nullopt;
}

ClientMessage message_from_event(const SessionEvent& e) {
    const char* kind = nullptr;
    switch (e.kind) {
        case EventKind::FragmentIn: kind = "fragment"; break;
        case EventKind::PointerIn: kind = "pointer"; break;
        case EventKind::NoteChecked: kind = "note_checked"; break;
        case EventKind::TipAck: kind = "tip_ack"; break;
        case EventKind::FilterApplied: kind = "filter"; break;
        case EventKind::ViewChange: kind = "view_change"; break;
        default: throw std::invalid_argument(std::string(to_string(e.kind)) + " is not a client message");
    }
    auto j = nlohmann::json::parse(e.payload.dump());
    j["kind"] = kind;
    return parse_client_message(j);
}

namespace {

bool diverged(const std::vector<SessionEvent>& original, const std::vector<SessionEvent>& regenerated) {
    const auto n = std::min(original.size(), regenerated.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (to_jsonl(original[i]) != to_jsonl(regenerated[i])) return true;
    }
    return false;
}

}  // namespace

ReplayResult replay(std::vector<SessionEvent> log, const RuleConfig& rules,
                    std::shared_ptr<SemanticOracle> oracle) {
    if (log.empty() || log.front().kind != EventKind::Config) {
        throw LogError(1, "log must start with a config event");
    }
    if (!oracle) oracle = std::make_shared<DeterministicOracle>(rules);

    SessionConfig config;
    try {
        config = parse_session_config(nlohmann::json::parse(log.front().payload.dump()));
    } catch (const std::exception& ex) {
        throw LogError(1, std::string("bad config: ") + ex.what());
    }

    ReplayResult r;
    r.engine = std::make_unique<Engine>(std::move(config), oracle, rules, Engine::EventSink{}, nullptr,
                                        RetryPolicy::no_wait());
    r.engine->start();

    bool closed = false;
    for (std::size_t i = 1; i < log.size(); ++i) {
        const auto& e = log[i];
        if (!is_input(e.kind)) continue;
        if (closed) throw LogError(i + 1, "input after session_closed");
        try {
            if (e.kind == EventKind::Config) throw std::invalid_argument("second config event");
            if (e.kind == EventKind::SessionClosed) {
                r.engine->close(e.t);
                closed = true;
            } else {
                r.engine->handle(message_from_event(e), e.t);
            }
        } catch (const LogError&) {
            throw;
        } catch (const ProtocolError& ex) {
            // Input that the original session accepted but this one rejects
            // means the sessions have already diverged; stop feeding.
            if (diverged(log, r.engine->events())) break;
            throw LogError(i + 1, ex.what());
        } catch (const std::exception& ex) {
            throw LogError(i + 1, ex.what());
        }
    }
    if (!closed && log.size() > 1) r.engine->advance_to(log.back().t);
    r.original = std::move(log);
    return r;
}

ReplayResult replay(std::istream& in, const RuleConfig& rules, std::shared_ptr<SemanticOracle> oracle) {
    return replay(read_log(in), rules, std::move(oracle));
}

ReplayResult replay_file(const std::string& path, const RuleConfig& rules, std::shared_ptr<SemanticOracle> oracle) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return replay(in, rules, std::move(oracle));
}

}  // namespace thinkaloud
