#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "planebreaker/graph/graph_state.hpp"
#include "planebreaker/mesh/colormap.hpp"
#include "planebreaker/relay/protocol.hpp"

namespace planebreaker::relay {

using ConnectionId = std::uint64_t;

/// Encoded frame shared by every recipient of a broadcast.
using Frame = std::shared_ptr<const std::string>;

struct Delivery {
    ConnectionId to;
    Frame frame;
};

struct SessionOptions {
    std::string session_id = "default";
    graph::GraphState initial_state{};
    mesh::ColorMap colormap = mesh::ColorMap::viridis();
    /// Called with the `type` of every decodable client frame.
    std::function<void(ConnectionId, std::string_view type)> on_receive;
};

/// The relay's single session: equation, status, graph state and the latest
/// mesh, plus the set of registered clients.
///
/// Not thread-safe. The owner must feed frames one at a time, which makes
/// every transition (including its re-mesh) atomic with respect to the next.
/// Each call returns the frames to deliver, in order.
class Session {
public:
    explicit Session(SessionOptions options = {});

    std::vector<Delivery> receive(ConnectionId from, std::string_view frame);

    /// Forgets the connection; a departing Wizard frees the role.
    void disconnect(ConnectionId id);

    json snapshot() const;

    const graph::GraphState& state() const noexcept { return state_; }
    Status status() const noexcept { return status_; }
    std::uint64_t revision() const noexcept { return revision_; }
    std::optional<Role> role_of(ConnectionId id) const;
    std::optional<ConnectionId> wizard() const noexcept { return wizard_; }
    const std::string& session_id() const noexcept { return options_.session_id; }

private:
    struct Equation {
        std::string source;
        std::string canonical;
    };

    class Outbox;

    void on_hello(ConnectionId from, const Hello& msg, Outbox& out);
    void on_set_equation(ConnectionId from, const SetEquation& msg, Outbox& out);
    void on_set_status(ConnectionId from, const SetStatus& msg, Outbox& out);
    void on_view_command(ConnectionId from, const ViewCommandMessage& msg, Outbox& out);
    void remesh(Outbox& out);

    SessionOptions options_;
    graph::GraphState state_;
    Status status_ = Status::Idle;
    std::uint64_t revision_ = 0;
    std::optional<Equation> equation_;
    json latest_mesh_;
    std::map<ConnectionId, Role> clients_;
    std::optional<ConnectionId> wizard_;
};

} // namespace planebreaker::relay
