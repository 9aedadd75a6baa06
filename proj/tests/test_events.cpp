#include "thinkaloud/events.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace thinkaloud;

namespace {

SessionEvent ev(std::uint64_t seq, Millis t, EventKind k, nlohmann::ordered_json p = nlohmann::ordered_json::object()) {
    return {seq, t, k, std::move(p)};
}

}  // namespace

TEST(Events, KindNamesRoundTrip) {
    for (int i = 0; i <= static_cast<int>(EventKind::ReminderHidden); ++i) {
        const auto k = static_cast<EventKind>(i);
        EXPECT_EQ(event_kind_from_string(to_string(k)), k);
    }
    EXPECT_THROW(event_kind_from_string("bogus"), std::invalid_argument);
}

TEST(Events, InputsAreLogOnly) {
    EXPECT_TRUE(is_input(EventKind::FragmentIn));
    EXPECT_FALSE(is_input(EventKind::NoteCreated));
    EXPECT_FALSE(wire_name(EventKind::FragmentIn));
    EXPECT_EQ(wire_name(EventKind::ThreadAssigned), "thread_updated");
    EXPECT_EQ(wire_name(EventKind::TalkText), "talktext");
}

TEST(Events, JsonlShape) {
    nlohmann::ordered_json p;
    p["id"] = "n1";
    const auto line = to_jsonl(ev(3, 1500, EventKind::NoteCreated, p));
    EXPECT_EQ(line, R"({"seq":3,"t":1500,"kind":"note_created","payload":{"id":"n1"}})");
    EXPECT_EQ(to_wire(ev(3, 1500, EventKind::ThreadAssigned, p)),
              R"({"seq":3,"t":1500,"kind":"thread_updated","payload":{"id":"n1"}})");
    EXPECT_THROW(to_wire(ev(1, 0, EventKind::Config)), std::invalid_argument);
}

TEST(Events, ParseRoundTrip) {
    nlohmann::ordered_json p;
    p["b"] = 1;
    p["a"] = {1, 2};
    const auto e = ev(9, 42, EventKind::TipShown, p);
    const auto back = parse_event(to_jsonl(e));
    EXPECT_EQ(to_jsonl(back), to_jsonl(e));
}

TEST(Events, ParseRejects) {
    EXPECT_THROW(parse_event("not json"), std::invalid_argument);
    EXPECT_THROW(parse_event("[]"), std::invalid_argument);
    EXPECT_THROW(parse_event(R"({"seq":1,"t":0,"kind":"config"})"), std::invalid_argument);
    EXPECT_THROW(parse_event(R"({"seq":-1,"t":0,"kind":"config","payload":{}})"), std::invalid_argument);
    EXPECT_THROW(parse_event(R"({"seq":1,"t":0,"kind":"nope","payload":{}})"), std::invalid_argument);
}

TEST(Events, LogRoundTrip) {
    std::vector<SessionEvent> events{ev(1, 0, EventKind::Config), ev(2, 10, EventKind::TalkText),
                                     ev(3, 20, EventKind::SessionClosed)};
    const auto text = serialize_log(events);
    std::istringstream in(text);
    const auto back = read_log(in);
    ASSERT_EQ(back.size(), 3u);
    EXPECT_EQ(serialize_log(back), text);
}

TEST(Events, TruncatedLineReportsLineNumber) {
    std::vector<SessionEvent> events{ev(1, 0, EventKind::Config), ev(2, 10, EventKind::TalkText)};
    auto text = serialize_log(events);
    text += R"({"seq":3,"t":20,"kind":"talk)";
    std::istringstream in(text);
    try {
        read_log(in);
        FAIL() << "expected LogError";
    } catch (const LogError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}

TEST(Events, NonIncreasingSeqRejected) {
    std::istringstream in(to_jsonl(ev(2, 0, EventKind::Config)) + "\n" + to_jsonl(ev(2, 0, EventKind::TalkText)) +
                          "\n");
    try {
        read_log(in);
        FAIL();
    } catch (const LogError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
}
