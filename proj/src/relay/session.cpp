#include "planebreaker/relay/session.hpp"

#include "planebreaker/expr/parser.hpp"
#include "planebreaker/mesh/kernels.hpp"
#include "planebreaker/mesh/surface.hpp"

namespace planebreaker::relay {

class Session::Outbox {
public:
    explicit Outbox(const std::map<ConnectionId, Role>& clients) : clients_(clients) {}

    void send(ConnectionId to, const json& message)
    {
        deliveries_.push_back({to, std::make_shared<const std::string>(message.dump())});
    }

    void broadcast(const json& message)
    {
        auto frame = std::make_shared<const std::string>(message.dump());
        for (const auto& [id, role] : clients_) {
            deliveries_.push_back({id, frame});
        }
    }

    std::vector<Delivery> take() { return std::move(deliveries_); }

private:
    const std::map<ConnectionId, Role>& clients_;
    std::vector<Delivery> deliveries_;
};

Session::Session(SessionOptions options)
    : options_(std::move(options)), state_(options_.initial_state), latest_mesh_(nullptr)
{
}

std::optional<Role> Session::role_of(ConnectionId id) const
{
    auto it = clients_.find(id);
    if (it == clients_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<Delivery> Session::receive(ConnectionId from, std::string_view frame)
{
    Outbox out(clients_);
    ClientMessage msg;
    try {
        msg = decode_client(frame);
    } catch (const DecodeError& e) {
        out.send(from, protocol_error(e.code(), e.what()));
        return out.take();
    }

    if (options_.on_receive) {
        options_.on_receive(from, type_name(msg));
    }

    const bool registered = clients_.contains(from);
    if (!registered && !std::holds_alternative<Hello>(msg)) {
        out.send(from, protocol_error(error_code::kHandshakeRequired, "the first message must be Hello"));
        return out.take();
    }

    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Hello>) {
                on_hello(from, m, out);
            } else if constexpr (std::is_same_v<T, SetEquation>) {
                on_set_equation(from, m, out);
            } else if constexpr (std::is_same_v<T, SetStatus>) {
                on_set_status(from, m, out);
            } else {
                on_view_command(from, m, out);
            }
        },
        msg);
    return out.take();
}

void Session::disconnect(ConnectionId id)
{
    clients_.erase(id);
    if (wizard_ == id) {
        wizard_.reset();
    }
}

void Session::on_hello(ConnectionId from, const Hello& msg, Outbox& out)
{
    if (clients_.contains(from)) {
        out.send(from, protocol_error(error_code::kAlreadyRegistered, "connection already sent Hello"));
        return;
    }
    if (msg.protocol_version != kProtocolVersion) {
        out.send(from, protocol_error(error_code::kBadVersion,
                                      "server speaks protocol version " + std::to_string(kProtocolVersion)));
        return;
    }
    if (msg.role == Role::Wizard) {
        if (wizard_) {
            out.send(from, protocol_error(error_code::kWizardTaken, "another wizard is connected"));
            return;
        }
        wizard_ = from;
    }
    clients_.emplace(from, msg.role);
    out.send(from, welcome(options_.session_id));
    if (msg.role == Role::Viewer) {
        out.send(from, snapshot());
    }
}

void Session::on_set_equation(ConnectionId from, const SetEquation& msg, Outbox& out)
{
    if (clients_.at(from) != Role::Wizard) {
        out.send(from, protocol_error(error_code::kNotWizard, "only the wizard may set the equation"));
        return;
    }

    std::optional<expr::Expression> parsed;
    try {
        parsed = expr::parse(msg.source);
    } catch (const expr::ParseError& e) {
        out.broadcast(equation_update(msg.source, std::nullopt, EquationError{e.position(), e.reason()}));
        return;
    }

    const std::string canonical = expr::canonical_text(*parsed);
    state_ = graph::set_equation(state_, *parsed);
    equation_ = Equation{msg.source, canonical};
    out.broadcast(equation_update(msg.source, canonical, std::nullopt));
    remesh(out);
    status_ = Status::Idle;
    out.broadcast(status_update(status_));
}

void Session::on_set_status(ConnectionId from, const SetStatus& msg, Outbox& out)
{
    if (clients_.at(from) != Role::Wizard) {
        out.send(from, protocol_error(error_code::kNotWizard, "only the wizard may set the status"));
        return;
    }
    status_ = msg.status;
    out.broadcast(status_update(status_));
}

void Session::on_view_command(ConnectionId, const ViewCommandMessage& msg, Outbox& out)
{
    state_ = graph::apply_command(state_, msg.command);
    if (state_.equation()) {
        remesh(out);
    }
}

void Session::remesh(Outbox& out)
{
    const expr::Expression& e = *state_.equation();
    const mesh::HeightField field = mesh::sample_grid(e, state_.domain(), state_.resolution());
    const mesh::SurfaceMesh surface = mesh::build_mesh(e, field, state_.z_limits(), options_.colormap);
    ++revision_;
    latest_mesh_ = mesh_update(revision_, surface);
    out.broadcast(latest_mesh_);
}

json Session::snapshot() const
{
    json equation = nullptr;
    if (equation_) {
        equation = {{"source", equation_->source}, {"canonical", equation_->canonical}};
    }
    return {
        {"type", "Snapshot"},
        {"equation", std::move(equation)},
        {"status", to_string(status_)},
        {"graph_state", graph_state_to_json(state_)},
        {"mesh", latest_mesh_},
    };
}

} // namespace planebreaker::relay
