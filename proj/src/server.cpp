#include "thinkaloud/server.hpp"

#include <boost/asio/dispatch.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/asio/signal_set.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include <deque>
#include <iostream>
#include <thread>

namespace thinkaloud {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

bool authorized(const http::request<http::string_body>& req, const std::optional<std::string>& token) {
    if (!token) return true;
    const auto target = std::string_view(req.target().data(), req.target().size());
    if (target.substr(0, target.find('?')) == "/healthz") return true;
    const auto auth = req[http::field::authorization];
    if (std::string_view(auth.data(), auth.size()) == "Bearer " + *token) return true;
    const auto q = target.find('?');
    if (q == std::string_view::npos) return false;
    std::string_view rest = target.substr(q + 1);
    while (!rest.empty()) {
        const auto amp = rest.find('&');
        if (rest.substr(0, amp) == "token=" + *token) return true;
        if (amp == std::string_view::npos) break;
        rest.remove_prefix(amp + 1);
    }
    return false;
}

class WsSession : public std::enable_shared_from_this<WsSession> {
public:
    WsSession(tcp::socket&& socket, SessionHost& host, std::string id)
        : ws_(std::move(socket)), host_(host), id_(std::move(id)) {}

    ~WsSession() {
        if (token_) host_.unsubscribe(id_, *token_);
    }

    void run(http::request<http::string_body> req) {
        ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        ws_.text(true);
        ws_.async_accept(req, beast::bind_front_handler(&WsSession::on_accept, shared_from_this()));
    }

private:
    void on_accept(beast::error_code ec) {
        if (ec) return;
        std::weak_ptr<WsSession> weak = shared_from_this();
        try {
            token_ = host_.subscribe(id_, [weak](const std::string& frame) {
                if (auto self = weak.lock()) {
                    net::post(self->ws_.get_executor(), [self, frame] { self->send(frame); });
                }
            });
        } catch (const NotFound& e) {
            send(error_frame(e.what()));
            return;
        }
        do_read();
    }

    void do_read() {
        ws_.async_read(buffer_, beast::bind_front_handler(&WsSession::on_read, shared_from_this()));
    }

    void on_read(beast::error_code ec, std::size_t) {
        if (ec) {
            if (token_) host_.unsubscribe(id_, *token_);
            token_.reset();
            return;
        }
        const auto frame = beast::buffers_to_string(buffer_.data());
        buffer_.consume(buffer_.size());
        try {
            host_.submit(id_, frame);
        } catch (const std::exception& e) {
            // Bad messages are answered, never fatal to the connection.
            send(error_frame(e.what()));
        }
        do_read();
    }

    void send(std::string frame) {
        outbox_.push_back(std::move(frame));
        if (outbox_.size() == 1) do_write();
    }

    void do_write() {
        ws_.async_write(net::buffer(outbox_.front()),
                        beast::bind_front_handler(&WsSession::on_write, shared_from_this()));
    }

    void on_write(beast::error_code ec, std::size_t) {
        if (ec) return;
        outbox_.pop_front();
        if (!outbox_.empty()) do_write();
    }

    websocket::stream<beast::tcp_stream> ws_;
    beast::flat_buffer buffer_;
    SessionHost& host_;
    std::string id_;
    std::optional<std::size_t> token_;
    std::deque<std::string> outbox_;
};

class HttpSession : public std::enable_shared_from_this<HttpSession> {
public:
    HttpSession(tcp::socket&& socket, SessionHost& host, const std::optional<std::string>& token)
        : stream_(std::move(socket)), host_(host), token_(token) {}

    void run() {
        net::dispatch(stream_.get_executor(), beast::bind_front_handler(&HttpSession::do_read, shared_from_this()));
    }

private:
    void do_read() {
        req_ = {};
        stream_.expires_after(std::chrono::seconds(30));
        http::async_read(stream_, buffer_, req_, beast::bind_front_handler(&HttpSession::on_read, shared_from_this()));
    }

    void on_read(beast::error_code ec, std::size_t) {
        if (ec) {
            beast::error_code ignored;
            stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
            return;
        }
        const std::string target(req_.target());
        if (!authorized(req_, token_)) {
            reply({401, "application/json", error_frame("missing or wrong token")});
            return;
        }
        if (websocket::is_upgrade(req_)) {
            auto id = stream_session_id(target);
            if (!id) {
                reply({404, "application/json", error_frame("no stream at " + target)});
                return;
            }
            try {
                (void)host_.threads(*id);
            } catch (const NotFound& e) {
                reply({404, "application/json", error_frame(e.what())});
                return;
            }
            stream_.expires_never();
            std::make_shared<WsSession>(stream_.release_socket(), host_, *id)->run(std::move(req_));
            return;
        }
        HttpResponse r;
        try {
            r = route(host_, std::string(req_.method_string()), target, req_.body());
        } catch (const std::exception& e) {
            r = {500, "application/json", error_frame(e.what())};
        }
        reply(std::move(r));
    }

    void reply(HttpResponse r) {
        auto res = std::make_shared<http::response<http::string_body>>(static_cast<http::status>(r.status),
                                                                        req_.version());
        res->set(http::field::server, "thinkaloud");
        res->set(http::field::content_type, r.content_type);
        res->keep_alive(req_.keep_alive());
        res->body() = std::move(r.body);
        res->prepare_payload();
        http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code ec, std::size_t) {
            if (ec) return;
            if (!res->keep_alive()) {
                beast::error_code ignored;
                self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
                return;
            }
            self->do_read();
        });
    }

    beast::tcp_stream stream_;
    beast::flat_buffer buffer_;
    http::request<http::string_body> req_;
    SessionHost& host_;
    const std::optional<std::string>& token_;
};

}  // namespace

struct Server::Impl {
    SessionHost& host;
    std::optional<std::string> token;
    net::io_context ioc;
    tcp::acceptor acceptor;
    std::vector<std::thread> threads;

    Impl(SessionHost& h, std::optional<std::string> t) : host(h), token(std::move(t)), acceptor(net::make_strand(ioc)) {}

    void spawn(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) threads.emplace_back([this] { ioc.run(); });
    }

    void accept() {
        acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
            if (ec) {
                if (ec == net::error::operation_aborted) return;
            } else {
                std::make_shared<HttpSession>(std::move(socket), host, token)->run();
            }
            accept();
        });
    }
};

Server::Server(SessionHost& host, const std::string& address, unsigned short port, std::optional<std::string> token)
    : impl_(std::make_unique<Impl>(host, std::move(token))) {
    const tcp::endpoint endpoint{net::ip::make_address(address), port};
    auto& a = impl_->acceptor;
    a.open(endpoint.protocol());
    a.set_option(net::socket_base::reuse_address(true));
    a.bind(endpoint);
    a.listen(net::socket_base::max_listen_connections);
    impl_->accept();
}

Server::~Server() { stop(); }

unsigned short Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::start(std::size_t threads) { impl_->spawn(std::max<std::size_t>(threads, 1)); }

void Server::run(std::size_t threads) {
    impl_->spawn(threads > 1 ? threads - 1 : 0);
    impl_->ioc.run();
}

void Server::stop_on_signals() {
    auto signals = std::make_shared<net::signal_set>(impl_->ioc, SIGINT, SIGTERM);
    signals->async_wait([this, signals](beast::error_code, int) { impl_->ioc.stop(); });
}

void Server::stop() {
    if (!impl_) return;
    impl_->ioc.stop();
    for (auto& t : impl_->threads) {
        if (t.joinable() && t.get_id() != std::this_thread::get_id()) t.join();
    }
    impl_->threads.clear();
}

}  // namespace thinkaloud
