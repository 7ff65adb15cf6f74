#include "planebreaker/relay/protocol.hpp"

#include <limits>

namespace planebreaker::relay {

namespace {

const json& field(const json& j, const char* name, std::string_view code)
{
    auto it = j.find(name);
    if (it == j.end()) {
        throw DecodeError(code, std::string("missing field '") + name + "'");
    }
    return *it;
}

std::string string_field(const json& j, const char* name, std::string_view code)
{
    const json& v = field(j, name, code);
    if (!v.is_string()) {
        throw DecodeError(code, std::string("field '") + name + "' must be a string");
    }
    return v.get<std::string>();
}

int int_field(const json& j, const char* name, std::string_view code)
{
    const json& v = field(j, name, code);
    if (v.is_number_integer()) {
        const auto n = v.get<std::int64_t>();
        if (n >= std::numeric_limits<int>::min() && n <= std::numeric_limits<int>::max()) {
            return static_cast<int>(n);
        }
    }
    throw DecodeError(code, std::string("field '") + name + "' must be an integer");
}

Status status_from(const std::string& s)
{
    if (s == "idle") return Status::Idle;
    if (s == "processing") return Status::Processing;
    throw DecodeError(error_code::kBadMessage, "unknown status '" + s + "'");
}

json flatten(const std::vector<mesh::Vec3>& v)
{
    json a = json::array();
    a.get_ref<json::array_t&>().reserve(v.size() * 3);
    for (const mesh::Vec3& p : v) {
        a.push_back(p.x);
        a.push_back(p.y);
        a.push_back(p.z);
    }
    return a;
}

json flatten(const std::vector<mesh::Rgb>& v)
{
    json a = json::array();
    a.get_ref<json::array_t&>().reserve(v.size() * 3);
    for (const mesh::Rgb& c : v) {
        a.push_back(c.r);
        a.push_back(c.g);
        a.push_back(c.b);
    }
    return a;
}

json flatten(const std::vector<mesh::Triangle>& v)
{
    json a = json::array();
    a.get_ref<json::array_t&>().reserve(v.size() * 3);
    for (const mesh::Triangle& t : v) {
        a.push_back(t[0]);
        a.push_back(t[1]);
        a.push_back(t[2]);
    }
    return a;
}

json axis_to_json(const mesh::Axis& axis)
{
    json ticks = json::array();
    for (const mesh::Tick& t : axis.ticks) {
        ticks.push_back({{"value", t.value}, {"label", t.label}});
    }
    return {{"min", axis.min}, {"max", axis.max}, {"ticks", std::move(ticks)}};
}

json domain_to_json(const mesh::Domain& d)
{
    return {{"x_min", d.x_min}, {"x_max", d.x_max}, {"y_min", d.y_min}, {"y_max", d.y_max}};
}

json z_limits_to_json(const mesh::ZLimits& z)
{
    return {{"z_min", z.z_min}, {"z_max", z.z_max}};
}

} // namespace

std::string_view to_string(Role r)
{
    return r == Role::Wizard ? "wizard" : "viewer";
}

std::string_view to_string(Status s)
{
    return s == Status::Idle ? "idle" : "processing";
}

std::string_view type_name(const ClientMessage& msg)
{
    static constexpr std::string_view kNames[] = {"Hello", "SetEquation", "SetStatus", "ViewCommand"};
    return kNames[msg.index()];
}

json encode_view_command(const graph::ViewCommand& cmd)
{
    json j = {{"type", "ViewCommand"}};
    std::visit(
        [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, graph::Pan>) {
                j["command"] = "pan";
                j["dx_steps"] = c.dx_steps;
                j["dy_steps"] = c.dy_steps;
            } else if constexpr (std::is_same_v<T, graph::Zoom>) {
                j["command"] = "zoom";
                j["direction"] = c.direction == graph::ZoomDirection::In ? "in" : "out";
                j["axis_target"] = c.target == graph::AxisTarget::InputDomain ? "input_domain" : "z_axis";
            } else {
                j["command"] = "reset";
            }
        },
        cmd);
    return j;
}

graph::ViewCommand decode_view_command(const json& j)
{
    constexpr std::string_view code = error_code::kBadCommand;
    const std::string command = string_field(j, "command", code);
    graph::ViewCommand cmd;
    if (command == "pan") {
        cmd = graph::Pan{int_field(j, "dx_steps", code), int_field(j, "dy_steps", code)};
    } else if (command == "zoom") {
        const std::string direction = string_field(j, "direction", code);
        const std::string target = string_field(j, "axis_target", code);
        graph::Zoom z;
        if (direction == "in") {
            z.direction = graph::ZoomDirection::In;
        } else if (direction == "out") {
            z.direction = graph::ZoomDirection::Out;
        } else {
            throw DecodeError(code, "zoom direction must be 'in' or 'out'");
        }
        if (target == "input_domain") {
            z.target = graph::AxisTarget::InputDomain;
        } else if (target == "z_axis") {
            z.target = graph::AxisTarget::ZAxis;
        } else {
            throw DecodeError(code, "axis_target must be 'input_domain' or 'z_axis'");
        }
        cmd = z;
    } else if (command == "reset") {
        cmd = graph::Reset{};
    } else {
        throw DecodeError(code, "unknown view command '" + command + "'");
    }
    try {
        graph::validate(cmd);
    } catch (const graph::CommandError& e) {
        throw DecodeError(code, e.what());
    }
    return cmd;
}

ClientMessage decode_client(std::string_view frame)
{
    json j = json::parse(frame, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw DecodeError(error_code::kBadMessage, "frame is not a JSON object");
    }
    constexpr std::string_view bad = error_code::kBadMessage;
    const std::string type = string_field(j, "type", bad);

    if (type == "Hello") {
        const std::string role = string_field(j, "role", bad);
        Hello h;
        if (role == "wizard") {
            h.role = Role::Wizard;
        } else if (role == "viewer") {
            h.role = Role::Viewer;
        } else {
            throw DecodeError(bad, "unknown role '" + role + "'");
        }
        h.protocol_version = int_field(j, "protocol_version", bad);
        return h;
    }
    if (type == "SetEquation") {
        return SetEquation{string_field(j, "source", bad)};
    }
    if (type == "SetStatus") {
        return SetStatus{status_from(string_field(j, "status", bad))};
    }
    if (type == "ViewCommand") {
        return ViewCommandMessage{decode_view_command(j)};
    }
    throw DecodeError(bad, "unknown message type '" + type + "'");
}

json encode(const ClientMessage& msg)
{
    return std::visit(
        [](const auto& m) -> json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Hello>) {
                return {{"type", "Hello"}, {"role", to_string(m.role)}, {"protocol_version", m.protocol_version}};
            } else if constexpr (std::is_same_v<T, SetEquation>) {
                return {{"type", "SetEquation"}, {"source", m.source}};
            } else if constexpr (std::is_same_v<T, SetStatus>) {
                return {{"type", "SetStatus"}, {"status", to_string(m.status)}};
            } else {
                return encode_view_command(m.command);
            }
        },
        msg);
}

json welcome(std::string_view session_id)
{
    return {{"type", "Welcome"}, {"session_id", session_id}, {"protocol_version", kProtocolVersion}};
}

json equation_update(std::string_view source,
                     const std::optional<std::string>& canonical,
                     const std::optional<EquationError>& error)
{
    json j = {{"type", "EquationUpdate"}, {"source", source}, {"canonical", nullptr}, {"error", nullptr}};
    if (canonical) {
        j["canonical"] = *canonical;
    }
    if (error) {
        j["error"] = {{"position", error->position}, {"reason", error->reason}};
    }
    return j;
}

json status_update(Status status)
{
    return {{"type", "StatusUpdate"}, {"status", to_string(status)}};
}

json axes_to_json(const mesh::AxisMetadata& axes)
{
    return {{"x", axis_to_json(axes.x)}, {"y", axis_to_json(axes.y)}, {"z", axis_to_json(axes.z)}};
}

json mesh_update(std::uint64_t revision, const mesh::SurfaceMesh& mesh)
{
    return {
        {"type", "MeshUpdate"},
        {"revision", revision},
        {"positions", flatten(mesh.positions)},
        {"normals", flatten(mesh.normals)},
        {"colors", flatten(mesh.colors)},
        {"indices", flatten(mesh.indices)},
        {"axes", axes_to_json(mesh.axes)},
        {"label", mesh.label},
    };
}

json protocol_error(std::string_view code, std::string_view message)
{
    return {{"type", "ProtocolError"}, {"code", code}, {"message", message}};
}

json graph_state_to_json(const graph::GraphState& state)
{
    const graph::GraphState::Defaults d = state.defaults();
    return {
        {"domain", domain_to_json(state.domain())},
        {"z_limits", z_limits_to_json(state.z_limits())},
        {"resolution", state.resolution().segments},
        {"defaults",
         {
             {"domain", domain_to_json(d.domain)},
             {"z_limits", z_limits_to_json(d.z_limits)},
             {"resolution", d.resolution.segments},
         }},
    };
}

} // namespace planebreaker::relay
