#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

#include "planebreaker/graph/graph_state.hpp"
#include "planebreaker/mesh/surface.hpp"

namespace planebreaker::relay {

using json = nlohmann::json;

inline constexpr int kProtocolVersion = 1;

enum class Role { Wizard, Viewer };
enum class Status { Idle, Processing };

std::string_view to_string(Role r);
std::string_view to_string(Status s);

// Client to server.

struct Hello {
    Role role = Role::Viewer;
    int protocol_version = kProtocolVersion;
};

struct SetEquation {
    std::string source;
};

struct SetStatus {
    Status status = Status::Idle;
};

struct ViewCommandMessage {
    graph::ViewCommand command;
};

using ClientMessage = std::variant<Hello, SetEquation, SetStatus, ViewCommandMessage>;

namespace error_code {
inline constexpr std::string_view kWizardTaken = "wizard_taken";
inline constexpr std::string_view kBadVersion = "bad_version";
inline constexpr std::string_view kNotWizard = "not_wizard";
inline constexpr std::string_view kBadCommand = "bad_command";
inline constexpr std::string_view kBadMessage = "bad_message";
inline constexpr std::string_view kHandshakeRequired = "handshake_required";
inline constexpr std::string_view kAlreadyRegistered = "already_registered";
} // namespace error_code

/// A client frame that cannot be decoded. code() is one of the
/// error_code constants and goes straight into the ProtocolError reply.
class DecodeError : public std::runtime_error {
public:
    DecodeError(std::string_view code, const std::string& message)
        : std::runtime_error(message), code_(code)
    {
    }

    std::string_view code() const noexcept { return code_; }

private:
    std::string_view code_;
};

/// Value of the `type` field for msg.
std::string_view type_name(const ClientMessage& msg);

/// Parses one text frame. Throws DecodeError.
ClientMessage decode_client(std::string_view frame);

json encode(const ClientMessage& msg);

json encode_view_command(const graph::ViewCommand& cmd);
graph::ViewCommand decode_view_command(const json& j);

// Server to client.

struct EquationError {
    std::size_t position;
    std::string reason;
};

json welcome(std::string_view session_id);
json equation_update(std::string_view source,
                     const std::optional<std::string>& canonical,
                     const std::optional<EquationError>& error);
json status_update(Status status);
json mesh_update(std::uint64_t revision, const mesh::SurfaceMesh& mesh);
json protocol_error(std::string_view code, std::string_view message);
json axes_to_json(const mesh::AxisMetadata& axes);
json graph_state_to_json(const graph::GraphState& state);

} // namespace planebreaker::relay
