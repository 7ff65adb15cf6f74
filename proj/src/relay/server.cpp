#include "planebreaker/relay/server.hpp"

#include <atomic>
#include <charconv>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <boost/asio/signal_set.hpp>
#include <boost/asio/steady_timer.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <spdlog/spdlog.h>

namespace planebreaker::relay {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

namespace {

constexpr std::size_t kMaxClientFrame = 64 * 1024;

std::string_view mime_type(const std::filesystem::path& path)
{
    const std::string ext = path.extension().string();
    if (ext == ".html" || ext == ".htm") return "text/html; charset=utf-8";
    if (ext == ".js" || ext == ".mjs") return "text/javascript; charset=utf-8";
    if (ext == ".css") return "text/css; charset=utf-8";
    if (ext == ".json") return "application/json";
    if (ext == ".svg") return "image/svg+xml";
    if (ext == ".png") return "image/png";
    if (ext == ".ico") return "image/x-icon";
    if (ext == ".wasm") return "application/wasm";
    if (ext == ".map") return "application/json";
    return "application/octet-stream";
}

} // namespace

Endpoint parse_endpoint(std::string_view text)
{
    const auto colon = text.rfind(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size()) {
        throw std::invalid_argument("address must look like host:port, got '" + std::string(text) + "'");
    }
    const std::string_view port_text = text.substr(colon + 1);
    unsigned int port = 0;
    auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (ec != std::errc{} || ptr != port_text.data() + port_text.size() || port > 65535) {
        throw std::invalid_argument("invalid port '" + std::string(port_text) + "'");
    }
    std::string host(text.substr(0, colon));
    if (host.size() >= 2 && host.front() == '[' && host.back() == ']') {
        host = host.substr(1, host.size() - 2);
    }
    return {host, static_cast<unsigned short>(port)};
}

class WsConnection;

struct detail::ServerHub {
    // Declared first so it outlives every handler that references the hub.
    net::io_context ioc;
    net::strand<net::io_context::executor_type> strand;
    tcp::acceptor acceptor;
    net::signal_set signals;
    net::steady_timer shutdown_deadline;
    ServerOptions options;
    std::string host;
    unsigned short port = 0;

    // Owned by `strand`.
    Session session;
    std::map<ConnectionId, std::weak_ptr<WsConnection>> connections;
    bool stopping = false;

    std::atomic<ConnectionId> next_id{1};

    explicit ServerHub(ServerOptions opts);

    void accept();
    void dispatch(std::vector<Delivery> deliveries);
    void stop();
    void finish_if_idle();
};

class WsConnection : public std::enable_shared_from_this<WsConnection> {
public:
    WsConnection(tcp::socket&& socket, detail::ServerHub& hub, ConnectionId id)
        : ws_(std::move(socket)), hub_(hub), id_(id)
    {
    }

    ConnectionId id() const { return id_; }

    void start(http::request<http::string_body> request)
    {
        ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        ws_.read_message_max(kMaxClientFrame);
        ws_.async_accept(request, beast::bind_front_handler(&WsConnection::on_accept, shared_from_this()));
    }

    void send(Frame frame)
    {
        net::post(ws_.get_executor(), [self = shared_from_this(), frame = std::move(frame)]() mutable {
            self->queue_.push_back(std::move(frame));
            if (self->queue_.size() == 1) {
                self->write_next();
            }
        });
    }

    void close()
    {
        net::post(ws_.get_executor(), [self = shared_from_this()] {
            self->ws_.async_close(websocket::close_code::going_away, [self](beast::error_code) {});
        });
    }

private:
    void on_accept(beast::error_code ec)
    {
        if (ec) {
            spdlog::debug("websocket handshake failed: {}", ec.message());
            return;
        }
        net::post(hub_.strand, [self = shared_from_this()] {
            if (self->hub_.stopping) {
                self->close();
                return;
            }
            self->hub_.connections[self->id_] = self;
            spdlog::debug("connection {} opened", self->id_);
        });
        read_next();
    }

    void read_next()
    {
        ws_.async_read(buffer_, beast::bind_front_handler(&WsConnection::on_read, shared_from_this()));
    }

    void on_read(beast::error_code ec, std::size_t)
    {
        if (ec) {
            net::post(hub_.strand, [self = shared_from_this()] {
                self->hub_.session.disconnect(self->id_);
                self->hub_.connections.erase(self->id_);
                spdlog::debug("connection {} closed", self->id_);
                self->hub_.finish_if_idle();
            });
            return;
        }
        std::string text = beast::buffers_to_string(buffer_.data());
        buffer_.consume(buffer_.size());

        if (!ws_.got_text()) {
            send(std::make_shared<const std::string>(
                protocol_error(error_code::kBadMessage, "binary frames are not supported").dump()));
        } else {
            net::post(hub_.strand, [self = shared_from_this(), text = std::move(text)] {
                self->hub_.dispatch(self->hub_.session.receive(self->id_, text));
            });
        }
        read_next();
    }

    void write_next()
    {
        ws_.text(true);
        ws_.async_write(net::buffer(*queue_.front()),
                        beast::bind_front_handler(&WsConnection::on_write, shared_from_this()));
    }

    void on_write(beast::error_code ec, std::size_t)
    {
        if (ec) {
            queue_.clear();
            return;
        }
        queue_.pop_front();
        if (!queue_.empty()) {
            write_next();
        }
    }

    websocket::stream<beast::tcp_stream> ws_;
    beast::flat_buffer buffer_;
    std::deque<Frame> queue_;
    detail::ServerHub& hub_;
    ConnectionId id_;
};

class HttpConnection : public std::enable_shared_from_this<HttpConnection> {
public:
    HttpConnection(tcp::socket&& socket, detail::ServerHub& hub) : stream_(std::move(socket)), hub_(hub) {}

    void start()
    {
        net::dispatch(stream_.get_executor(), beast::bind_front_handler(&HttpConnection::read, shared_from_this()));
    }

private:
    void read()
    {
        request_ = {};
        stream_.expires_after(std::chrono::seconds(30));
        http::async_read(stream_, buffer_, request_,
                         beast::bind_front_handler(&HttpConnection::on_read, shared_from_this()));
    }

    void on_read(beast::error_code ec, std::size_t)
    {
        if (ec) {
            return;
        }
        if (websocket::is_upgrade(request_)) {
            if (request_.target() == "/ws") {
                stream_.expires_never();
                const ConnectionId id = hub_.next_id++;
                std::make_shared<WsConnection>(stream_.release_socket(), hub_, id)->start(std::move(request_));
                return;
            }
            respond(text_response(http::status::not_found, "websocket endpoint is /ws\n"));
            return;
        }
        respond(serve_file());
    }

    http::response<http::string_body> text_response(http::status status, std::string body) const
    {
        http::response<http::string_body> res{status, request_.version()};
        res.set(http::field::content_type, "text/plain; charset=utf-8");
        res.body() = std::move(body);
        return res;
    }

    http::response<http::string_body> serve_file() const
    {
        if (request_.method() != http::verb::get && request_.method() != http::verb::head) {
            return text_response(http::status::method_not_allowed, "method not allowed\n");
        }
        std::string target(request_.target());
        if (auto q = target.find_first_of("?#"); q != std::string::npos) {
            target.erase(q);
        }
        if (target.empty() || target.front() != '/' || target.find("..") != std::string::npos) {
            return text_response(http::status::bad_request, "bad path\n");
        }
        if (target.back() == '/') {
            target += "index.html";
        }
        const std::filesystem::path& root = hub_.options.web_root;
        const std::filesystem::path file = root / target.substr(1);
        std::ifstream in(file, std::ios::binary);
        if (root.empty() || !std::filesystem::is_regular_file(file) || !in) {
            return text_response(http::status::not_found, "not found: " + target + "\n");
        }
        std::ostringstream body;
        body << in.rdbuf();

        http::response<http::string_body> res{http::status::ok, request_.version()};
        res.set(http::field::content_type, std::string(mime_type(file)));
        res.body() = body.str();
        return res;
    }

    void respond(http::response<http::string_body> res)
    {
        res.set(http::field::server, "plane-breaker");
        res.keep_alive(false);
        res.prepare_payload();
        if (request_.method() == http::verb::head) {
            res.body().clear();
        }
        auto shared = std::make_shared<http::response<http::string_body>>(std::move(res));
        http::async_write(stream_, *shared, [self = shared_from_this(), shared](beast::error_code, std::size_t) {
            beast::error_code ignored;
            self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
        });
    }

    beast::tcp_stream stream_;
    beast::flat_buffer buffer_;
    http::request<http::string_body> request_;
    detail::ServerHub& hub_;
};

detail::ServerHub::ServerHub(ServerOptions opts)
    : strand(net::make_strand(ioc))
    , acceptor(ioc)
    , signals(ioc)
    , shutdown_deadline(ioc)
    , options(std::move(opts))
    , session(options.session)
{
    try {
        const tcp::endpoint endpoint(net::ip::make_address(options.listen.host), options.listen.port);
        acceptor.open(endpoint.protocol());
        acceptor.set_option(net::socket_base::reuse_address(true));
        acceptor.bind(endpoint);
        acceptor.listen(net::socket_base::max_listen_connections);
        host = endpoint.address().to_string();
        port = acceptor.local_endpoint().port();
    } catch (const boost::system::system_error& e) {
        throw BindError("cannot listen on " + options.listen.host + ":" + std::to_string(options.listen.port) + ": "
                        + e.code().message());
    }
}

// The acceptor is only touched on the session strand, which stop() also uses.
void detail::ServerHub::accept()
{
    auto on_accept = [this](beast::error_code ec, tcp::socket socket) {
        if (stopping) {
            return;
        }
        if (ec) {
            spdlog::warn("accept failed: {}", ec.message());
        } else {
            std::make_shared<HttpConnection>(std::move(socket), *this)->start();
        }
        accept();
    };
    acceptor.async_accept(net::make_strand(ioc), net::bind_executor(strand, std::move(on_accept)));
}

void detail::ServerHub::dispatch(std::vector<Delivery> deliveries)
{
    for (Delivery& d : deliveries) {
        auto it = connections.find(d.to);
        if (it == connections.end()) {
            continue;
        }
        if (auto conn = it->second.lock()) {
            conn->send(std::move(d.frame));
        }
    }
}

void detail::ServerHub::stop()
{
    net::post(strand, [this] {
        if (stopping) {
            return;
        }
        stopping = true;
        beast::error_code ignored;
        acceptor.close(ignored);
        signals.cancel(ignored);
        for (auto& [id, weak] : connections) {
            if (auto conn = weak.lock()) {
                conn->close();
            }
        }
        // Peers that never answer the close must not hold run() open; the
        // wait ends early once the last WebSocket is gone.
        shutdown_deadline.expires_after(std::chrono::seconds(1));
        shutdown_deadline.async_wait([this](beast::error_code) { ioc.stop(); });
        finish_if_idle();
    });
}

void detail::ServerHub::finish_if_idle()
{
    if (stopping && connections.empty()) {
        shutdown_deadline.cancel();
    }
}

Server::Server(ServerOptions options) : impl_(std::make_unique<detail::ServerHub>(std::move(options))) {}

Server::~Server() = default;

unsigned short Server::port() const
{
    return impl_->port;
}

const std::string& Server::host() const
{
    return impl_->host;
}

void Server::run()
{
    net::post(impl_->strand, [hub = impl_.get()] { hub->accept(); });
    const int extra = std::max(0, impl_->options.threads - 1);
    std::vector<std::thread> pool;
    pool.reserve(extra);
    for (int k = 0; k < extra; ++k) {
        pool.emplace_back([this] { impl_->ioc.run(); });
    }
    impl_->ioc.run();
    for (std::thread& t : pool) {
        t.join();
    }
}

void Server::stop()
{
    impl_->stop();
}

void Server::stop_on_signals()
{
    impl_->signals.add(SIGINT);
    impl_->signals.add(SIGTERM);
    impl_->signals.async_wait([this](beast::error_code ec, int signal) {
        if (!ec) {
            spdlog::info("signal {} received, shutting down", signal);
            impl_->stop();
        }
    });
}

} // namespace planebreaker::relay
