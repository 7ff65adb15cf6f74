#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "planebreaker/expr/ast.hpp"
#include "planebreaker/mesh/colormap.hpp"
#include "planebreaker/mesh/grid.hpp"
#include "planebreaker/mesh/vec.hpp"

namespace planebreaker::mesh {

struct Tick {
    double value;
    std::string label;

    friend bool operator==(const Tick&, const Tick&) = default;
};

struct Axis {
    double min = 0.0;
    double max = 0.0;
    std::vector<Tick> ticks;

    friend bool operator==(const Axis&, const Axis&) = default;
};

struct AxisMetadata {
    Axis x;
    Axis y;
    Axis z;

    friend bool operator==(const AxisMetadata&, const AxisMetadata&) = default;
};

using Triangle = std::array<std::uint32_t, 3>;

/// Triangulated, clipped surface. Triangles wind counter-clockwise seen
/// from +z.
struct SurfaceMesh {
    std::vector<Vec3> positions;
    std::vector<Vec3> normals;
    std::vector<Rgb> colors;
    std::vector<Triangle> indices;
    AxisMetadata axes;
    std::string label;

    /// No triangle survived clipping: callers show "no surface in range".
    bool empty() const noexcept { return indices.empty(); }

    friend bool operator==(const SurfaceMesh&, const SurfaceMesh&) = default;
};

inline constexpr int kTicksPerAxis = 5;

/// Five evenly spaced ticks per axis, both endpoints included.
AxisMetadata build_axes(const Domain& domain, const ZLimits& z_limits);

/// Decimal tick label with at most three fractional digits.
std::string format_tick(double value);

/// Triangulates field. Each cell splits along its (i, j)→(i+1, j+1) diagonal;
/// a sample becomes a vertex only if it is defined and inside z_limits, and a
/// triangle survives only if all three of its samples became vertices.
/// Vertices are numbered densely in grid order.
SurfaceMesh build_mesh(const expr::Expression& expr,
                       const HeightField& field,
                       const ZLimits& z_limits,
                       const ColorMap& cmap);

} // namespace planebreaker::mesh
