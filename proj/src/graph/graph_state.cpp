#include "planebreaker/graph/graph_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace planebreaker::graph {

bool GraphState::Range::valid() const
{
    const double l = lo();
    const double h = hi();
    return std::isfinite(l) && std::isfinite(h) && l < h && span >= kMinSpan && span <= kMaxSpan;
}

GraphState::Range GraphState::range_of(double lo, double hi)
{
    const double span = hi - lo;
    if (!(span >= kMinSpan && span <= kMaxSpan)) {
        throw std::invalid_argument("axis span must lie in [1e-3, 1e6]");
    }
    Range r{lo + span / 2.0, span};
    if (!r.valid()) {
        throw std::invalid_argument("axis range is not representable");
    }
    return r;
}

GraphState::GraphState() : GraphState(mesh::kDefaultDomain, mesh::kDefaultZLimits, mesh::kWireResolution) {}

GraphState::GraphState(const mesh::Domain& domain, const mesh::ZLimits& z_limits, mesh::Resolution resolution)
{
    domain.validate();
    z_limits.validate();
    resolution.validate();
    default_x_ = x_ = range_of(domain.x_min, domain.x_max);
    default_y_ = y_ = range_of(domain.y_min, domain.y_max);
    default_z_ = z_ = range_of(z_limits.z_min, z_limits.z_max);
    default_resolution_ = resolution_ = resolution;
}

mesh::Domain GraphState::domain() const
{
    return {x_.lo(), x_.hi(), y_.lo(), y_.hi()};
}

mesh::ZLimits GraphState::z_limits() const
{
    return {z_.lo(), z_.hi()};
}

GraphState::Defaults GraphState::defaults() const
{
    return {
        {default_x_.lo(), default_x_.hi(), default_y_.lo(), default_y_.hi()},
        {default_z_.lo(), default_z_.hi()},
        default_resolution_,
    };
}

GraphState GraphState::pan(int dx_steps, int dy_steps) const
{
    GraphState next = *this;
    next.x_.center = x_.center + dx_steps * kPanStepFraction * x_.span;
    next.y_.center = y_.center + dy_steps * kPanStepFraction * y_.span;
    if (!next.x_.valid() || !next.y_.valid()) {
        return *this;
    }
    return next;
}

GraphState GraphState::zoom(ZoomDirection direction, AxisTarget target) const
{
    auto scaled = [direction](Range r) {
        const double span = direction == ZoomDirection::In ? r.span / kZoomFactor : r.span * kZoomFactor;
        r.span = std::clamp(span, kMinSpan, kMaxSpan);
        return r;
    };

    GraphState next = *this;
    if (target == AxisTarget::InputDomain) {
        next.x_ = scaled(x_);
        next.y_ = scaled(y_);
    } else {
        next.z_ = scaled(z_);
    }
    if (!next.x_.valid() || !next.y_.valid() || !next.z_.valid()) {
        return *this;
    }
    return next;
}

GraphState GraphState::reset() const
{
    GraphState next = *this;
    next.x_ = default_x_;
    next.y_ = default_y_;
    next.z_ = default_z_;
    next.resolution_ = default_resolution_;
    return next;
}

GraphState GraphState::with_equation(expr::Expression e) const
{
    GraphState next = *this;
    next.equation_ = std::move(e);
    return next;
}

GraphState pan(const GraphState& state, int dx_steps, int dy_steps)
{
    return state.pan(dx_steps, dy_steps);
}

GraphState zoom(const GraphState& state, ZoomDirection direction, AxisTarget target)
{
    return state.zoom(direction, target);
}

GraphState reset(const GraphState& state)
{
    return state.reset();
}

GraphState set_equation(const GraphState& state, expr::Expression e)
{
    // Variable only names x or y, so the two-variable contract holds by type.
    return state.with_equation(std::move(e));
}

void validate(const ViewCommand& cmd)
{
    if (const auto* p = std::get_if<Pan>(&cmd)) {
        const auto bad = [](int s) { return s < -kMaxSteps || s > kMaxSteps; };
        if (bad(p->dx_steps) || bad(p->dy_steps)) {
            throw CommandError("pan steps must lie in [-100, 100], got (" + std::to_string(p->dx_steps) + ", "
                               + std::to_string(p->dy_steps) + ")");
        }
    }
}

GraphState apply_command(const GraphState& state, const ViewCommand& cmd)
{
    validate(cmd);
    return std::visit(
        [&](const auto& c) -> GraphState {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Pan>) {
                return state.pan(c.dx_steps, c.dy_steps);
            } else if constexpr (std::is_same_v<T, Zoom>) {
                return state.zoom(c.direction, c.target);
            } else {
                return state.reset();
            }
        },
        cmd);
}

} // namespace planebreaker::graph
