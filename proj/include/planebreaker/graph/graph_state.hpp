#pragma once

#include <optional>
#include <stdexcept>
#include <variant>

#include "planebreaker/expr/ast.hpp"
#include "planebreaker/mesh/grid.hpp"

namespace planebreaker::graph {

inline constexpr double kPanStepFraction = 0.1;
inline constexpr double kZoomFactor = 1.25;
inline constexpr double kMinSpan = 1e-3;
inline constexpr double kMaxSpan = 1e6;
inline constexpr int kMaxSteps = 100;

enum class ZoomDirection { In, Out };
enum class AxisTarget { InputDomain, ZAxis };

struct Pan {
    int dx_steps = 0;
    int dy_steps = 0;

    friend bool operator==(const Pan&, const Pan&) = default;
};

struct Zoom {
    ZoomDirection direction = ZoomDirection::In;
    AxisTarget target = AxisTarget::InputDomain;

    friend bool operator==(const Zoom&, const Zoom&) = default;
};

struct Reset {
    friend bool operator==(const Reset&, const Reset&) = default;
};

using ViewCommand = std::variant<Pan, Zoom, Reset>;

/// A view command outside its allowed range.
class CommandError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Axis limits, resolution and current equation of one graph.
///
/// Immutable: every transition returns a new state. Each axis is held as a
/// center and a span; pan moves only centers and zoom scales only spans, so
/// spans stay inside [kMinSpan, kMaxSpan] under any command sequence.
class GraphState {
public:
    struct Defaults {
        mesh::Domain domain;
        mesh::ZLimits z_limits;
        mesh::Resolution resolution;

        friend bool operator==(const Defaults&, const Defaults&) = default;
    };

    /// Default domain [-5, 5]², z limits [-5, 5], 128 segments.
    GraphState();

    /// The given values become the session defaults. Throws
    /// std::invalid_argument if an invariant fails, including spans outside
    /// [kMinSpan, kMaxSpan].
    GraphState(const mesh::Domain& domain, const mesh::ZLimits& z_limits, mesh::Resolution resolution);

    mesh::Domain domain() const;
    mesh::ZLimits z_limits() const;
    mesh::Resolution resolution() const { return resolution_; }
    Defaults defaults() const;
    const std::optional<expr::Expression>& equation() const { return equation_; }

    GraphState pan(int dx_steps, int dy_steps) const;
    GraphState zoom(ZoomDirection direction, AxisTarget target) const;
    GraphState reset() const;
    GraphState with_equation(expr::Expression e) const;

    friend bool operator==(const GraphState&, const GraphState&) = default;

private:
    struct Range {
        double center = 0.0;
        double span = 1.0;

        double lo() const { return center - span / 2.0; }
        double hi() const { return center + span / 2.0; }
        bool valid() const;

        friend bool operator==(const Range&, const Range&) = default;
    };

    static Range range_of(double lo, double hi);

    Range x_;
    Range y_;
    Range z_;
    mesh::Resolution resolution_;
    Range default_x_;
    Range default_y_;
    Range default_z_;
    mesh::Resolution default_resolution_;
    std::optional<expr::Expression> equation_;
};

GraphState pan(const GraphState& state, int dx_steps, int dy_steps);
GraphState zoom(const GraphState& state, ZoomDirection direction, AxisTarget target);
GraphState reset(const GraphState& state);

/// Replaces the equation; axes are left as they are.
GraphState set_equation(const GraphState& state, expr::Expression e);

/// Dispatches cmd. Throws CommandError for pan steps outside
/// [-kMaxSteps, kMaxSteps].
GraphState apply_command(const GraphState& state, const ViewCommand& cmd);

void validate(const ViewCommand& cmd);

} // namespace planebreaker::graph
