#pragma once

#include <chrono>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

namespace planebreaker::testing {

/// Blocking WebSocket client for loopback tests against the relay.
class WsClient {
public:
    WsClient(const std::string& host, unsigned short port, const std::string& target = "/ws");
    ~WsClient();

    void send(const nlohmann::json& message);
    void send_text(const std::string& text);

    /// Next text frame; throws std::runtime_error on timeout or close.
    std::string receive_text(std::chrono::milliseconds timeout = std::chrono::seconds(5));
    nlohmann::json receive(std::chrono::milliseconds timeout = std::chrono::seconds(5));

    /// Receives until a message of the given type arrives.
    nlohmann::json receive_type(const std::string& type,
                                std::chrono::milliseconds timeout = std::chrono::seconds(5));

    void close();

private:
    struct State;
    std::unique_ptr<State> state_;
};

} // namespace planebreaker::testing
