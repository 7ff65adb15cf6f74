#pragma once

#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "planebreaker/relay/session.hpp"

namespace planebreaker::relay {

namespace detail {
struct ServerHub;
} // namespace detail

struct Endpoint {
    std::string host;
    unsigned short port;
};

/// Parses `host:port`; throws std::invalid_argument.
Endpoint parse_endpoint(std::string_view text);

struct ServerOptions {
    Endpoint listen{"127.0.0.1", 8080};
    /// Directory served at `/`; the viewer bundle lives here.
    std::filesystem::path web_root;
    SessionOptions session;
    int threads = 2;
};

class BindError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// WebSocket relay on `/ws` plus static files on every other GET path.
///
/// All session mutations run on one strand, so frames are applied strictly
/// one at a time and the resulting broadcasts leave in commit order.
class Server {
public:
    /// Binds and listens immediately; throws BindError.
    explicit Server(ServerOptions options);
    ~Server();

    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Actual bound port (useful when listening on port 0).
    unsigned short port() const;
    const std::string& host() const;

    /// Serves until stop(). Blocks the calling thread.
    void run();

    /// Closes the listener and every connection, then lets run() return.
    /// Safe to call from any thread, any number of times.
    void stop();

    /// Routes SIGINT and SIGTERM to stop().
    void stop_on_signals();

private:
    std::unique_ptr<detail::ServerHub> impl_;
};

} // namespace planebreaker::relay
