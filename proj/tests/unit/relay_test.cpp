#include <doctest.h>

#include "planebreaker/relay/protocol.hpp"
#include "planebreaker/relay/session.hpp"

using namespace planebreaker;
using namespace planebreaker::relay;

namespace {

struct Sent {
    ConnectionId to;
    json message;
};

std::vector<Sent> feed(Session& s, ConnectionId from, const json& message)
{
    std::vector<Sent> out;
    for (const auto& d : s.receive(from, message.dump())) out.push_back({d.to, json::parse(*d.frame)});
    return out;
}

std::vector<json> to(const std::vector<Sent>& sent, ConnectionId id)
{
    std::vector<json> out;
    for (const auto& s : sent) {
        if (s.to == id) out.push_back(s.message);
    }
    return out;
}

std::vector<std::string> types(const std::vector<json>& messages)
{
    std::vector<std::string> out;
    for (const auto& m : messages) out.push_back(m.at("type"));
    return out;
}

json hello(std::string_view role, int version = kProtocolVersion)
{
    return {{"type", "Hello"}, {"role", role}, {"protocol_version", version}};
}

json set_equation(std::string_view source)
{
    return {{"type", "SetEquation"}, {"source", source}};
}

json set_status(std::string_view status)
{
    return {{"type", "SetStatus"}, {"status", status}};
}

SessionOptions small_options()
{
    SessionOptions o;
    o.initial_state = graph::GraphState(mesh::kDefaultDomain, mesh::kDefaultZLimits, mesh::Resolution{8});
    return o;
}

constexpr ConnectionId kWizard = 1;
constexpr ConnectionId kViewer = 2;
constexpr ConnectionId kViewer2 = 3;

} // namespace

TEST_SUITE("protocol") {

TEST_CASE("client messages round trip through JSON")
{
    const std::vector<ClientMessage> messages = {
        Hello{Role::Wizard, 1},
        SetEquation{"z = x"},
        SetStatus{Status::Processing},
        ViewCommandMessage{graph::Pan{3, -2}},
        ViewCommandMessage{graph::Zoom{graph::ZoomDirection::Out, graph::AxisTarget::ZAxis}},
        ViewCommandMessage{graph::Reset{}},
    };
    for (const auto& m : messages) {
        const json j = encode(m);
        CHECK(j.at("type") == type_name(m));
        CHECK(encode(decode_client(j.dump())) == j);
    }
}

TEST_CASE("view command encoding")
{
    CHECK(encode_view_command(graph::Pan{1, 0})
          == json{{"type", "ViewCommand"}, {"command", "pan"}, {"dx_steps", 1}, {"dy_steps", 0}});
    CHECK(encode_view_command(graph::Zoom{})
          == json{{"type", "ViewCommand"}, {"command", "zoom"}, {"direction", "in"}, {"axis_target", "input_domain"}});
    CHECK(encode_view_command(graph::Reset{}) == json{{"type", "ViewCommand"}, {"command", "reset"}});
}

TEST_CASE("decode errors")
{
    const auto code_of = [](std::string_view frame) -> std::string {
        try {
            decode_client(frame);
        } catch (const DecodeError& e) {
            return std::string(e.code());
        }
        return "none";
    };
    CHECK(code_of("not json") == "bad_message");
    CHECK(code_of("[1,2]") == "bad_message");
    CHECK(code_of(R"({"role":"wizard"})") == "bad_message");
    CHECK(code_of(R"({"type":"Nope"})") == "bad_message");
    CHECK(code_of(R"({"type":"Hello","role":"admin","protocol_version":1})") == "bad_message");
    CHECK(code_of(R"({"type":"SetEquation","source":5})") == "bad_message");
    CHECK(code_of(R"({"type":"SetStatus","status":"busy"})") == "bad_message");
    CHECK(code_of(R"({"type":"ViewCommand","command":"pan","dx_steps":101,"dy_steps":0})") == "bad_command");
    CHECK(code_of(R"({"type":"ViewCommand","command":"pan","dx_steps":1.5,"dy_steps":0})") == "bad_command");
    CHECK(code_of(R"({"type":"ViewCommand","command":"pan","dx_steps":1})") == "bad_command");
    CHECK(code_of(R"({"type":"ViewCommand","command":"spin"})") == "bad_command");
    CHECK(code_of(R"({"type":"ViewCommand","command":"zoom","direction":"sideways","axis_target":"z_axis"})")
          == "bad_command");
    CHECK(code_of(R"({"type":"ViewCommand","command":"pan","dx_steps":100,"dy_steps":-100})") == "none");
}

TEST_CASE("mesh update layout")
{
    mesh::SurfaceMesh m;
    m.positions = {{0, 0, 0}, {1, 0, 1}, {1, 1, 1}};
    m.normals = {{0, 0, 1}, {0, 0, 1}, {0, 0, 1}};
    m.colors = {{0.1, 0.2, 0.3}, {0.1, 0.2, 0.3}, {0.1, 0.2, 0.3}};
    m.indices = {{0, 1, 2}};
    m.axes = mesh::build_axes(mesh::kDefaultDomain, mesh::kDefaultZLimits);
    m.label = "z = x";
    const json j = mesh_update(7, m);
    CHECK(j.at("type") == "MeshUpdate");
    CHECK(j.at("revision") == 7);
    CHECK(j.at("positions").size() == 9);
    CHECK(j.at("normals").size() == 9);
    CHECK(j.at("colors").size() == 9);
    CHECK(j.at("indices") == json::array({0, 1, 2}));
    CHECK(j.at("label") == "z = x");
    CHECK(j.at("axes").at("x").at("ticks").size() == 5);
    CHECK(j.at("axes").at("x").at("ticks")[1] == json{{"value", -2.5}, {"label", "-2.5"}});
}

} // TEST_SUITE

TEST_SUITE("session") {

TEST_CASE("hello and roles")
{
    Session s(small_options());
    auto out = feed(s, kWizard, hello("wizard"));
    REQUIRE(out.size() == 1);
    CHECK(out[0].to == kWizard);
    CHECK(out[0].message == json{{"type", "Welcome"}, {"session_id", "default"}, {"protocol_version", 1}});
    CHECK(s.wizard() == kWizard);

    out = feed(s, kViewer, hello("wizard"));
    REQUIRE(out.size() == 1);
    CHECK(out[0].message.at("code") == "wizard_taken");
    CHECK_FALSE(s.role_of(kViewer).has_value());

    out = feed(s, kViewer, hello("viewer"));
    CHECK(types(to(out, kViewer)) == std::vector<std::string>{"Welcome", "Snapshot"});
    CHECK(s.role_of(kViewer) == Role::Viewer);

    out = feed(s, kViewer, hello("viewer"));
    CHECK(out[0].message.at("code") == "already_registered");
}

TEST_CASE("version mismatch")
{
    Session s(small_options());
    const auto out = feed(s, kViewer, hello("viewer", 2));
    REQUIRE(out.size() == 1);
    CHECK(out[0].message.at("code") == "bad_version");
    CHECK_FALSE(s.role_of(kViewer).has_value());
}

TEST_CASE("messages before hello")
{
    Session s(small_options());
    for (const json& m : {json{{"type", "ViewCommand"}, {"command", "reset"}}, set_equation("x"), set_status("idle")}) {
        const auto out = feed(s, kViewer, m);
        REQUIRE(out.size() == 1);
        CHECK(out[0].message.at("type") == "ProtocolError");
        CHECK(out[0].message.at("code") == "handshake_required");
    }
    const auto out = s.receive(kViewer, "{{{");
    CHECK(json::parse(*out.at(0).frame).at("code") == "bad_message");
}

TEST_CASE("equation flow")
{
    Session s(small_options());
    feed(s, kWizard, hello("wizard"));
    feed(s, kViewer, hello("viewer"));

    auto out = feed(s, kWizard, set_status("processing"));
    CHECK(types(to(out, kViewer)) == std::vector<std::string>{"StatusUpdate"});
    CHECK(to(out, kViewer)[0].at("status") == "processing");
    CHECK(to(out, kWizard).size() == 1);

    out = feed(s, kWizard, set_equation("z = sin(x) + cos(y)"));
    for (ConnectionId id : {kWizard, kViewer}) {
        const auto got = to(out, id);
        CHECK(types(got) == std::vector<std::string>{"EquationUpdate", "MeshUpdate", "StatusUpdate"});
        CHECK(got[0].at("canonical") == "z = (sin(x) + cos(y))");
        CHECK(got[0].at("error").is_null());
        CHECK(got[1].at("label") == "z = (sin(x) + cos(y))");
        CHECK(got[1].at("revision") == 1);
        CHECK(got[2].at("status") == "idle");
    }
    CHECK(s.revision() == 1);
    CHECK(s.status() == Status::Idle);
}

TEST_CASE("parse failure")
{
    Session s(small_options());
    feed(s, kWizard, hello("wizard"));
    feed(s, kWizard, set_equation("x"));
    const auto before = s.state();
    const auto out = feed(s, kWizard, set_equation("sin("));
    REQUIRE(out.size() == 1);
    const json& m = out[0].message;
    CHECK(m.at("type") == "EquationUpdate");
    CHECK(m.at("source") == "sin(");
    CHECK(m.at("canonical").is_null());
    CHECK(m.at("error").at("position") == 4);
    CHECK(s.revision() == 1);
    CHECK(s.state() == before);
}

TEST_CASE("viewer cannot act as wizard")
{
    Session s(small_options());
    feed(s, kViewer, hello("viewer"));
    for (const json& m : {set_equation("x"), set_status("processing")}) {
        const auto out = feed(s, kViewer, m);
        REQUIRE(out.size() == 1);
        CHECK(out[0].to == kViewer);
        CHECK(out[0].message.at("code") == "not_wizard");
    }
    CHECK(s.status() == Status::Idle);
}

TEST_CASE("status twice")
{
    Session s(small_options());
    feed(s, kWizard, hello("wizard"));
    feed(s, kViewer, hello("viewer"));
    const auto a = feed(s, kWizard, set_status("processing"));
    const auto b = feed(s, kWizard, set_status("processing"));
    CHECK(to(a, kViewer).size() == 1);
    CHECK(to(b, kViewer).size() == 1);
    CHECK(s.status() == Status::Processing);
}

TEST_CASE("view commands")
{
    Session s(small_options());
    feed(s, kWizard, hello("wizard"));
    feed(s, kViewer, hello("viewer"));

    // No equation yet: state moves silently.
    auto out = feed(s, kViewer, encode_view_command(graph::Pan{1, 0}));
    CHECK(out.empty());
    CHECK(s.state().domain().x_min == -4);
    feed(s, kViewer, encode_view_command(graph::Reset{}));

    const auto first = to(feed(s, kWizard, set_equation("x y")), kViewer).at(1);
    out = feed(s, kViewer, encode_view_command(graph::Zoom{}));
    auto got = to(out, kViewer);
    REQUIRE(types(got) == std::vector<std::string>{"MeshUpdate"});
    CHECK(got[0].at("axes").at("x").at("min") == -4);
    CHECK(got[0].at("axes").at("x").at("max") == 4);
    CHECK(got[0].at("revision") == 2);
    CHECK(to(out, kWizard).size() == 1);

    got = to(feed(s, kWizard, encode_view_command(graph::Reset{})), kViewer);
    json reset_mesh = got.at(0);
    CHECK(reset_mesh.at("revision") == 3);
    reset_mesh.erase("revision");
    json first_mesh = first;
    first_mesh.erase("revision");
    CHECK(reset_mesh == first_mesh);

    out = feed(s, kViewer, json{{"type", "ViewCommand"}, {"command", "pan"}, {"dx_steps", 500}, {"dy_steps", 0}});
    REQUIRE(out.size() == 1);
    CHECK(out[0].message.at("code") == "bad_command");
    CHECK(s.revision() == 3);
}

TEST_CASE("snapshot")
{
    Session s(small_options());
    const json fresh = s.snapshot();
    CHECK(fresh.at("type") == "Snapshot");
    CHECK(fresh.at("equation").is_null());
    CHECK(fresh.at("status") == "idle");
    CHECK(fresh.at("mesh").is_null());
    CHECK(fresh.at("graph_state").at("domain").at("x_min") == -5);
    CHECK(fresh.at("graph_state").at("resolution") == 8);
    CHECK(s.snapshot() == fresh);

    feed(s, kWizard, hello("wizard"));
    feed(s, kViewer, hello("viewer"));
    feed(s, kWizard, set_equation("x^2 - y"));
    const auto live = to(feed(s, kViewer, encode_view_command(graph::Zoom{})), kViewer).back();

    const auto joined = to(feed(s, kViewer2, hello("viewer")), kViewer2);
    REQUIRE(types(joined) == std::vector<std::string>{"Welcome", "Snapshot"});
    CHECK(joined[1].at("mesh").dump() == live.dump());
    CHECK(joined[1].at("equation").at("canonical") == "z = ((x ^ 2) - y)");
    CHECK(s.snapshot().dump() == s.snapshot().dump());
}

TEST_CASE("disconnecting the wizard frees the role")
{
    Session s(small_options());
    feed(s, kWizard, hello("wizard"));
    feed(s, kViewer, hello("viewer"));
    feed(s, kWizard, set_equation("x"));
    s.disconnect(kWizard);
    CHECK_FALSE(s.wizard().has_value());
    CHECK(s.revision() == 1);
    const auto out = feed(s, kViewer2, hello("wizard"));
    CHECK(out.at(0).message.at("type") == "Welcome");
    CHECK(s.wizard() == kViewer2);
    // Frames from a connection after it left are treated as a new handshake.
    CHECK(feed(s, kWizard, set_equation("y")).at(0).message.at("code") == "handshake_required");
}

TEST_CASE("receive hook sees only message types")
{
    std::vector<std::string> seen;
    auto opts = small_options();
    opts.on_receive = [&](ConnectionId, std::string_view type) { seen.emplace_back(type); };
    Session s(opts);
    feed(s, kWizard, hello("wizard"));
    feed(s, kWizard, set_status("processing"));
    s.receive(kWizard, "garbage");
    CHECK(seen == std::vector<std::string>{"Hello", "SetStatus"});
}

} // TEST_SUITE
