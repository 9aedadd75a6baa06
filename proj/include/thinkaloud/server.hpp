#pragma once
// HTTP + WebSocket front end for a SessionHost.

#include "thinkaloud/service.hpp"

#include <memory>
#include <optional>
#include <string>

namespace thinkaloud {

class Server {
public:
    // Binds immediately; port 0 picks a free port. With a token, every
    // request except /healthz must carry "Authorization: Bearer <token>" or
    // a token=<token> query parameter.
    Server(SessionHost& host, const std::string& address, unsigned short port,
           std::optional<std::string> token = std::nullopt);
    ~Server();

    unsigned short port() const;

    // Serves on `threads` background threads until stop().
    void start(std::size_t threads = 2);
    // Serves on the calling thread plus threads - 1 others; returns after stop().
    void run(std::size_t threads = 2);
    void stop();
    // SIGINT/SIGTERM end run().
    void stop_on_signals();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace thinkaloud
