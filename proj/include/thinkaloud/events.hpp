#pragma once
// Session event log: one JSON object per line, strictly increasing seq.

#include "thinkaloud/model.hpp"

#include <cstdint>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace thinkaloud {

enum class EventKind {
    // Inputs: everything replay needs to rebuild a session.
    Config,
    FragmentIn,
    PointerIn,
    NoteChecked,
    TipAck,
    FilterApplied,
    ViewChange,
    SessionClosed,
    // Engine output.
    TalkText,
    TalkViz,
    NoteCreated,
    NoteEnriched,
    NoteMerged,
    ThreadAssigned,
    TipCandidates,
    TipShown,
    TipDismissed,
    TipResponse,
    ReminderShown,
    ReminderHidden,
};

std::string_view to_string(EventKind k);
EventKind event_kind_from_string(std::string_view s);

bool is_input(EventKind k);

// Kind name used in server→client frames, or nullopt for log-only kinds.
std::optional<std::string_view> wire_name(EventKind k);

struct SessionEvent {
    std::uint64_t seq = 0;
    Millis t = 0;
    EventKind kind = EventKind::Config;
    nlohmann::ordered_json payload = nlohmann::ordered_json::object();
};

class LogError : public std::runtime_error {
public:
    LogError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Compact JSON, no trailing newline.
std::string to_jsonl(const SessionEvent& e);
std::string to_wire(const SessionEvent& e);

// Throws std::invalid_argument describing the problem.
SessionEvent parse_event(std::string_view line);

// Reads a whole log. Throws LogError with the 1-based line of the first
// unparsable line, including a truncated final line, or of a seq that does
// not increase.
std::vector<SessionEvent> read_log(std::istream& in);
std::vector<SessionEvent> read_log_file(const std::string& path);

void write_log(std::ostream& out, const std::vector<SessionEvent>& events);
std::string serialize_log(const std::vector<SessionEvent>& events);

}  // namespace thinkaloud
