#include "thinkaloud/events.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <utility>

namespace thinkaloud {

namespace {

struct KindInfo {
    EventKind kind;
    std::string_view name;
    bool input;
    std::string_view wire;  // empty: not sent to clients
};

constexpr std::array<KindInfo, 20> kKinds{{
    {EventKind::Config, "config", true, ""},
    {EventKind::FragmentIn, "fragment_in", true, ""},
    {EventKind::PointerIn, "pointer_in", true, ""},
    {EventKind::NoteChecked, "note_checked", true, ""},
    {EventKind::TipAck, "tip_ack", true, ""},
    {EventKind::FilterApplied, "filter_applied", true, ""},
    {EventKind::ViewChange, "view_change", true, ""},
    {EventKind::SessionClosed, "session_closed", true, ""},
    {EventKind::TalkText, "talktext", false, "talktext"},
    {EventKind::TalkViz, "talkviz", false, "talkviz"},
    {EventKind::NoteCreated, "note_created", false, "note_created"},
    {EventKind::NoteEnriched, "note_enriched", false, "note_enriched"},
    {EventKind::NoteMerged, "note_merged", false, "note_merged"},
    {EventKind::ThreadAssigned, "thread_assigned", false, "thread_updated"},
    {EventKind::TipCandidates, "tip_candidates", false, ""},
    {EventKind::TipShown, "tip_shown", false, "tip_shown"},
    {EventKind::TipDismissed, "tip_dismissed", false, "tip_dismissed"},
    {EventKind::TipResponse, "tip_response", false, ""},
    {EventKind::ReminderShown, "reminder_shown", false, "reminder_shown"},
    {EventKind::ReminderHidden, "reminder_hidden", false, "reminder_hidden"},
}};

const KindInfo& info(EventKind k) {
    for (const auto& i : kKinds) {
        if (i.kind == k) return i;
    }
    throw std::invalid_argument("event kind out of range");
}

}  // namespace

std::string_view to_string(EventKind k) { return info(k).name; }

EventKind event_kind_from_string(std::string_view s) {
    for (const auto& i : kKinds) {
        if (i.name == s) return i.kind;
    }
    throw std::invalid_argument("unknown event kind '" + std::string(s) + "'");
}

bool is_input(EventKind k) { return info(k).input; }

std::optional<std::string_view> wire_name(EventKind k) {
    const auto& i = info(k);
    if (i.wire.empty()) return std::nullopt;
    return i.wire;
}

std::string to_jsonl(const SessionEvent& e) {
    nlohmann::ordered_json j;
    j["seq"] = e.seq;
    j["t"] = e.t;
    j["kind"] = to_string(e.kind);
    j["payload"] = e.payload;
    return j.dump();
}

std::string to_wire(const SessionEvent& e) {
    const auto name = wire_name(e.kind);
    if (!name) throw std::invalid_argument("event kind '" + std::string(to_string(e.kind)) + "' is log-only");
    nlohmann::ordered_json j;
    j["seq"] = e.seq;
    j["t"] = e.t;
    j["kind"] = *name;
    j["payload"] = e.payload;
    return j.dump();
}

SessionEvent parse_event(std::string_view line) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("event is not an object");
    for (const char* key : {"seq", "t", "kind", "payload"}) {
        if (!j.contains(key)) throw std::invalid_argument(std::string("event missing '") + key + "'");
    }
    if (!j["seq"].is_number_unsigned()) throw std::invalid_argument("'seq' must be a non-negative integer");
    if (!j["t"].is_number_integer()) throw std::invalid_argument("'t' must be an integer");
    if (!j["kind"].is_string()) throw std::invalid_argument("'kind' must be a string");
    if (!j["payload"].is_object()) throw std::invalid_argument("'payload' must be an object");
    SessionEvent e;
    e.seq = j["seq"].get<std::uint64_t>();
    e.t = j["t"].get<Millis>();
    e.kind = event_kind_from_string(j["kind"].get<std::string>());
    e.payload = std::move(j["payload"]);
    return e;
}

std::vector<SessionEvent> read_log(std::istream& in) {
    std::vector<SessionEvent> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        SessionEvent e;
        try {
            e = parse_event(line);
        } catch (const std::exception& ex) {
            throw LogError(n, ex.what());
        }
        if (!out.empty() && e.seq <= out.back().seq) {
            throw LogError(n, "seq " + std::to_string(e.seq) + " does not increase");
        }
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<SessionEvent> read_log_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open log '" + path + "'");
    return read_log(in);
}

void write_log(std::ostream& out, const std::vector<SessionEvent>& events) {
    for (const auto& e : events) out << to_jsonl(e) << '\n';
}

std::string serialize_log(const std::vector<SessionEvent>& events) {
    std::ostringstream out;
    write_log(out, events);
    return out.str();
}

}  // namespace thinkaloud
