#include "ws_client.hpp"

#include <stdexcept>

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

namespace planebreaker::testing {

namespace beast = boost::beast;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

struct WsClient::State {
    net::io_context ioc;
    websocket::stream<tcp::socket> ws{ioc};
    beast::flat_buffer buffer;
};

WsClient::WsClient(const std::string& host, unsigned short port, const std::string& target)
    : state_(std::make_unique<State>())
{
    tcp::resolver resolver(state_->ioc);
    net::connect(state_->ws.next_layer(), resolver.resolve(host, std::to_string(port)));
    state_->ws.handshake(host + ":" + std::to_string(port), target);
    state_->ws.text(true);
}

WsClient::~WsClient()
{
    try {
        close();
    } catch (...) {
    }
}

void WsClient::send(const nlohmann::json& message)
{
    send_text(message.dump());
}

void WsClient::send_text(const std::string& text)
{
    state_->ws.write(net::buffer(text));
}

std::string WsClient::receive_text(std::chrono::milliseconds timeout)
{
    bool done = false;
    beast::error_code result;
    state_->ws.async_read(state_->buffer, [&](beast::error_code ec, std::size_t) {
        result = ec;
        done = true;
    });
    state_->ioc.restart();
    state_->ioc.run_for(timeout);
    if (!done) {
        beast::error_code ignored;
        state_->ws.next_layer().cancel(ignored);
        state_->ioc.restart();
        state_->ioc.run();
        throw std::runtime_error("timed out waiting for a frame");
    }
    if (result) {
        throw std::runtime_error("read failed: " + result.message());
    }
    std::string text = beast::buffers_to_string(state_->buffer.data());
    state_->buffer.consume(state_->buffer.size());
    return text;
}

nlohmann::json WsClient::receive(std::chrono::milliseconds timeout)
{
    return nlohmann::json::parse(receive_text(timeout));
}

nlohmann::json WsClient::receive_type(const std::string& type, std::chrono::milliseconds timeout)
{
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0) {
            throw std::runtime_error("timed out waiting for " + type);
        }
        nlohmann::json j = receive(left);
        if (j.at("type") == type) {
            return j;
        }
    }
}

void WsClient::close()
{
    if (state_ && state_->ws.is_open()) {
        beast::error_code ec;
        state_->ws.close(websocket::close_code::normal, ec);
    }
}

} // namespace planebreaker::testing
