#pragma once
// Multi-session host and its HTTP routing, independent of any socket code.

#include "thinkaloud/engine.hpp"

#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

namespace boost::asio {
class thread_pool;
}

namespace thinkaloud {

class NotFound : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

struct HostOptions {
    std::filesystem::path log_dir = "logs";
    RuleConfig rules = RuleConfig::defaults();
    // Null means the rule-based oracle.
    std::shared_ptr<SemanticOracle> oracle;
    // Run note enrichment and tip generation on a worker pool. Off keeps a
    // live log replayable byte for byte.
    bool background_jobs = false;
    std::size_t workers = 4;
    // Drive ticks from a wall-clock timer thread.
    bool timer = true;
    std::function<std::chrono::steady_clock::time_point()> clock = [] { return std::chrono::steady_clock::now(); };
};

class SessionHost {
public:
    using Subscriber = std::function<void(const std::string& frame)>;

    explicit SessionHost(HostOptions options);
    ~SessionHost();

    SessionHost(const SessionHost&) = delete;
    SessionHost& operator=(const SessionHost&) = delete;

    // Throws ConfigRejected.
    std::string open(const nlohmann::json& config);

    // Parses and applies one client frame. Throws ProtocolError, NotFound.
    void submit(const std::string& id, std::string_view frame);
    void submit(const std::string& id, const ClientMessage& msg);

    // Returns a token for unsubscribe(). Frames arrive in log order.
    std::size_t subscribe(const std::string& id, Subscriber s);
    void unsubscribe(const std::string& id, std::size_t token);

    // Logs filter_applied when `labels` is given.
    ojson notes(const std::string& id, const std::optional<LabelSet>& labels, bool grouped);
    ojson threads(const std::string& id);
    std::string log(const std::string& id);
    void close(const std::string& id);

    // Advances every open session to the current clock time.
    void tick_all();

    std::vector<std::string> sessions() const;
    std::filesystem::path log_path(const std::string& id) const;
    const HostOptions& options() const { return options_; }

private:
    struct Session;
    std::shared_ptr<Session> get(const std::string& id) const;
    Millis elapsed(const Session& s) const;
    void timer_loop();

    HostOptions options_;
    std::unique_ptr<boost::asio::thread_pool> pool_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;

    std::mutex timer_mutex_;
    std::condition_variable timer_cv_;
    bool stopping_ = false;
    std::thread timer_;
};

struct HttpResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

// Maps a request to the host. `target` includes the query string.
HttpResponse route(SessionHost& host, std::string_view method, std::string_view target, const std::string& body);

// "/session/{id}/stream" -> id.
std::optional<std::string> stream_session_id(std::string_view target);

}  // namespace thinkaloud
