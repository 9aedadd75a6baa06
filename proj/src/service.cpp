#include "thinkaloud/service.hpp"

#include "thinkaloud/deterministic_oracle.hpp"
#include "thinkaloud/text.hpp"

#include <boost/asio/post.hpp>
#include <boost/asio/thread_pool.hpp>

#include <fstream>
#include <random>
#include <sstream>

namespace thinkaloud {

struct SessionHost::Session final : JobSink {
    std::string id;
    std::mutex mutex;
    std::chrono::steady_clock::time_point started;
    std::ofstream log;
    std::map<std::size_t, Subscriber> subscribers;
    std::size_t next_token = 0;
    std::unique_ptr<Engine> engine;
    boost::asio::thread_pool* pool = nullptr;
    std::weak_ptr<Session> self;

    // Runs with `mutex` held, from inside the engine.
    void submit(Work work) override {
        if (!pool) {
            work()();
            return;
        }
        boost::asio::post(*pool, [keep = self.lock(), work = std::move(work)] {
            auto done = work();
            std::lock_guard lock(keep->mutex);
            done();
        });
    }

    void record(const SessionEvent& e) {
        log << to_jsonl(e) << '\n';
        log.flush();
        if (!wire_name(e.kind)) return;
        const auto frame = to_wire(e);
        for (const auto& [_, s] : subscribers) s(frame);
    }
};

namespace {

std::string new_session_id() {
    static std::mutex m;
    static std::mt19937_64 rng{std::random_device{}()};
    std::lock_guard lock(m);
    std::ostringstream ss;
    ss << std::hex << (rng() & 0xffffffffffffULL);
    return ss.str();
}

}  // namespace

SessionHost::SessionHost(HostOptions options) : options_(std::move(options)) {
    if (!options_.oracle) options_.oracle = std::make_shared<DeterministicOracle>(options_.rules);
    std::filesystem::create_directories(options_.log_dir);
    if (options_.background_jobs) pool_ = std::make_unique<boost::asio::thread_pool>(options_.workers);
    if (options_.timer) timer_ = std::thread([this] { timer_loop(); });
}

SessionHost::~SessionHost() {
    {
        std::lock_guard lock(timer_mutex_);
        stopping_ = true;
    }
    timer_cv_.notify_all();
    if (timer_.joinable()) timer_.join();
    if (pool_) pool_->join();
}

void SessionHost::timer_loop() {
    std::unique_lock lock(timer_mutex_);
    while (!stopping_) {
        timer_cv_.wait_for(lock, std::chrono::milliseconds(100));
        if (stopping_) break;
        lock.unlock();
        tick_all();
        lock.lock();
    }
}

Millis SessionHost::elapsed(const Session& s) const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(options_.clock() - s.started).count();
}

std::string SessionHost::open(const nlohmann::json& config) {
    auto parsed = parse_session_config(config);
    auto s = std::make_shared<Session>();
    s->self = s;
    s->pool = pool_.get();
    s->started = options_.clock();
    {
        std::lock_guard lock(mutex_);
        do {
            s->id = new_session_id();
        } while (sessions_.contains(s->id));
    }
    s->log.open(log_path(s->id), std::ios::out | std::ios::trunc);
    if (!s->log) throw std::runtime_error("cannot write " + log_path(s->id).string());

    Session* raw = s.get();
    s->engine = std::make_unique<Engine>(
        std::move(parsed), options_.oracle, options_.rules, [raw](const SessionEvent& e) { raw->record(e); }, raw);
    {
        std::lock_guard session_lock(s->mutex);
        s->engine->start();
    }
    std::lock_guard lock(mutex_);
    sessions_[s->id] = s;
    return s->id;
}

std::shared_ptr<SessionHost::Session> SessionHost::get(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw NotFound("unknown session '" + id + "'");
    return it->second;
}

std::filesystem::path SessionHost::log_path(const std::string& id) const {
    return options_.log_dir / (id + ".events.jsonl");
}

std::vector<std::string> SessionHost::sessions() const {
    std::lock_guard lock(mutex_);
    std::vector<std::string> out;
    for (const auto& [id, _] : sessions_) out.push_back(id);
    return out;
}

void SessionHost::submit(const std::string& id, std::string_view frame) {
    submit(id, parse_client_message(frame));
}

void SessionHost::submit(const std::string& id, const ClientMessage& msg) {
    auto s = get(id);
    std::lock_guard lock(s->mutex);
    const Millis t = message_time(msg).value_or(elapsed(*s));
    try {
        s->engine->handle(msg, t);
    } catch (const ProtocolError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ProtocolError(e.what());
    }
}

std::size_t SessionHost::subscribe(const std::string& id, Subscriber sub) {
    auto s = get(id);
    std::lock_guard lock(s->mutex);
    const auto token = s->next_token++;
    s->subscribers.emplace(token, std::move(sub));
    return token;
}

void SessionHost::unsubscribe(const std::string& id, std::size_t token) {
    std::shared_ptr<Session> s;
    try {
        s = get(id);
    } catch (const NotFound&) {
        return;
    }
    std::lock_guard lock(s->mutex);
    s->subscribers.erase(token);
}

ojson SessionHost::notes(const std::string& id, const std::optional<LabelSet>& labels, bool grouped) {
    auto s = get(id);
    std::lock_guard lock(s->mutex);
    if (labels && !s->engine->closed()) s->engine->handle(FilterMsg{*labels}, elapsed(*s));
    const auto groups = s->engine->query(labels.value_or(LabelSet{}));
    ojson out;
    if (grouped) {
        out["threads"] = ojson::array();
        for (const auto& g : groups) {
            ojson notes = ojson::array();
            for (const auto& n : g.notes) notes.push_back(to_json(n));
            out["threads"].push_back({{"thread", to_json(g.thread)}, {"notes", std::move(notes)}});
        }
    } else {
        out["notes"] = ojson::array();
        for (const auto& g : groups) {
            for (const auto& n : g.notes) out["notes"].push_back(to_json(n));
        }
    }
    return out;
}

ojson SessionHost::threads(const std::string& id) {
    auto s = get(id);
    std::lock_guard lock(s->mutex);
    ojson out = {{"threads", ojson::array()}};
    for (const auto& t : s->engine->threads().threads()) out["threads"].push_back(to_json(t));
    return out;
}

std::string SessionHost::log(const std::string& id) {
    auto s = get(id);
    std::lock_guard lock(s->mutex);
    return serialize_log(s->engine->events());
}

void SessionHost::close(const std::string& id) {
    auto s = get(id);
    std::lock_guard lock(s->mutex);
    s->engine->close(elapsed(*s));
}

void SessionHost::tick_all() {
    std::vector<std::shared_ptr<Session>> all;
    {
        std::lock_guard lock(mutex_);
        for (const auto& [_, s] : sessions_) all.push_back(s);
    }
    for (const auto& s : all) {
        std::lock_guard lock(s->mutex);
        if (!s->engine->closed()) s->engine->advance_to(elapsed(*s));
    }
}

namespace {

std::string percent_decode(std::string_view s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '+') {
            out += ' ';
        } else if (s[i] == '%' && i + 2 < s.size() && std::isxdigit(static_cast<unsigned char>(s[i + 1])) &&
                   std::isxdigit(static_cast<unsigned char>(s[i + 2]))) {
            out += static_cast<char>(std::stoi(std::string(s.substr(i + 1, 2)), nullptr, 16));
            i += 2;
        } else {
            out += s[i];
        }
    }
    return out;
}

std::map<std::string, std::string> parse_query(std::string_view q) {
    std::map<std::string, std::string> out;
    while (!q.empty()) {
        const auto amp = q.find('&');
        const auto pair = q.substr(0, amp);
        const auto eq = pair.find('=');
        if (!pair.empty()) {
            out[percent_decode(pair.substr(0, eq))] =
                eq == std::string_view::npos ? std::string() : percent_decode(pair.substr(eq + 1));
        }
        if (amp == std::string_view::npos) break;
        q.remove_prefix(amp + 1);
    }
    return out;
}

std::vector<std::string> split_path(std::string_view path) {
    std::vector<std::string> parts;
    while (!path.empty()) {
        if (path.front() == '/') {
            path.remove_prefix(1);
            continue;
        }
        const auto slash = path.find('/');
        parts.push_back(percent_decode(path.substr(0, slash)));
        if (slash == std::string_view::npos) break;
        path.remove_prefix(slash);
    }
    return parts;
}

HttpResponse json_response(int status, const ojson& j) { return {status, "application/json", j.dump()}; }

HttpResponse error_response(int status, const std::string& message) {
    return {status, "application/json", error_frame(message)};
}

bool truthy(const std::string& v) { return v.empty() || v == "1" || v == "true" || v == "yes"; }

}  // namespace

std::optional<std::string> stream_session_id(std::string_view target) {
    const auto parts = split_path(target.substr(0, target.find('?')));
    if (parts.size() == 3 && parts[0] == "session" && parts[2] == "stream") return parts[1];
    return std::nullopt;
}

HttpResponse route(SessionHost& host, std::string_view method, std::string_view target, const std::string& body) {
    const auto qpos = target.find('?');
    const auto parts = split_path(target.substr(0, qpos));
    const auto query = qpos == std::string_view::npos ? std::map<std::string, std::string>{}
                                                     : parse_query(target.substr(qpos + 1));
    try {
        if (parts == std::vector<std::string>{"healthz"}) {
            if (method != "GET") return error_response(405, "method not allowed");
            return json_response(200, {{"status", "ok"}, {"sessions", host.sessions().size()}});
        }
        if (parts == std::vector<std::string>{"session"}) {
            if (method != "POST") return error_response(405, "method not allowed");
            nlohmann::json config;
            try {
                config = nlohmann::json::parse(body);
            } catch (const nlohmann::json::parse_error& e) {
                return error_response(400, std::string("malformed JSON: ") + e.what());
            }
            try {
                return json_response(201, {{"id", host.open(config)}});
            } catch (const ConfigRejected& e) {
                ojson fields = ojson::array();
                for (const auto& f : e.errors()) fields.push_back({{"field", f.field}, {"message", f.message}});
                ojson j = {{"kind", "error"}, {"payload", {{"message", e.what()}, {"fields", std::move(fields)}}}};
                return json_response(400, j);
            }
        }
        if (parts.size() == 3 && parts[0] == "session") {
            const auto& id = parts[1];
            const auto& what = parts[2];
            if (what == "close") {
                if (method != "POST") return error_response(405, "method not allowed");
                host.close(id);
                return json_response(200, {{"id", id}, {"closed", true}});
            }
            if (method != "GET") return error_response(405, "method not allowed");
            if (what == "notes") {
                std::optional<LabelSet> labels;
                if (auto it = query.find("labels"); it != query.end()) {
                    labels.emplace();
                    std::string_view rest = it->second;
                    while (!rest.empty()) {
                        const auto comma = rest.find(',');
                        const auto name = text::trim(rest.substr(0, comma));
                        if (!name.empty()) {
                            try {
                                labels->insert(label_from_string(name));
                            } catch (const std::exception&) {
                                return error_response(400, "unknown label '" + name + "'");
                            }
                        }
                        if (comma == std::string_view::npos) break;
                        rest.remove_prefix(comma + 1);
                    }
                }
                const auto g = query.find("group");
                return json_response(200, host.notes(id, labels, g == query.end() || truthy(g->second)));
            }
            if (what == "threads") return json_response(200, host.threads(id));
            if (what == "log") return {200, "application/x-ndjson", host.log(id)};
        }
        return error_response(404, "no route for " + std::string(target));
    } catch (const NotFound& e) {
        return error_response(404, e.what());
    } catch (const ProtocolError& e) {
        return error_response(409, e.what());
    }
}

}  // namespace thinkaloud
