#include "planebreaker/mesh/surface.hpp"

#include <cstdio>
#include <limits>

#include "planebreaker/mesh/kernels.hpp"

namespace planebreaker::mesh {

namespace {

Axis make_axis(double lo, double hi)
{
    Axis axis{lo, hi, {}};
    axis.ticks.reserve(kTicksPerAxis);
    for (int k = 0; k < kTicksPerAxis; ++k) {
        const double v = grid_coordinate(lo, hi, k, kTicksPerAxis - 1);
        axis.ticks.push_back({v, format_tick(v)});
    }
    return axis;
}

constexpr std::uint32_t kRejected = std::numeric_limits<std::uint32_t>::max();

} // namespace

std::string format_tick(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", value);
    std::string s(buf);
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') {
            s.pop_back();
        }
        if (s.back() == '.') {
            s.pop_back();
        }
    }
    if (s == "-0") {
        s = "0";
    }
    return s;
}

AxisMetadata build_axes(const Domain& domain, const ZLimits& z_limits)
{
    domain.validate();
    z_limits.validate();
    return AxisMetadata{
        make_axis(domain.x_min, domain.x_max),
        make_axis(domain.y_min, domain.y_max),
        make_axis(z_limits.z_min, z_limits.z_max),
    };
}

SurfaceMesh build_mesh(const expr::Expression& expr,
                       const HeightField& field,
                       const ZLimits& z_limits,
                       const ColorMap& cmap)
{
    z_limits.validate();
    const int nx = field.nx();
    const int ny = field.ny();
    const double z_span = z_limits.z_max - z_limits.z_min;
    const std::vector<Vec3> grid_normals = compute_normals(field);

    SurfaceMesh mesh;
    std::vector<std::uint32_t> vertex_of(field.values().size(), kRejected);

    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const expr::EvalResult sample = field.at(i, j);
            if (!sample.is_defined()) {
                continue;
            }
            const double z = sample.value();
            if (z < z_limits.z_min || z > z_limits.z_max) {
                continue;
            }
            const std::size_t k = field.index(i, j);
            vertex_of[k] = static_cast<std::uint32_t>(mesh.positions.size());
            mesh.positions.push_back({field.x(i), field.y(j), z});
            mesh.normals.push_back(grid_normals[k]);
            mesh.colors.push_back(cmap.map((z - z_limits.z_min) / z_span));
        }
    }

    auto emit = [&](std::size_t a, std::size_t b, std::size_t c) {
        const std::uint32_t va = vertex_of[a];
        const std::uint32_t vb = vertex_of[b];
        const std::uint32_t vc = vertex_of[c];
        if (va != kRejected && vb != kRejected && vc != kRejected) {
            mesh.indices.push_back({va, vb, vc});
        }
    };

    for (int i = 0; i + 1 < nx; ++i) {
        for (int j = 0; j + 1 < ny; ++j) {
            const std::size_t v00 = field.index(i, j);
            const std::size_t v10 = field.index(i + 1, j);
            const std::size_t v01 = field.index(i, j + 1);
            const std::size_t v11 = field.index(i + 1, j + 1);
            emit(v00, v10, v11);
            emit(v00, v11, v01);
        }
    }

    mesh.axes = build_axes(field.domain(), z_limits);
    mesh.label = expr::canonical_text(expr);
    return mesh;
}

} // namespace planebreaker::mesh
