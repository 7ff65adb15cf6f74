#include "planebreaker/mesh/kernels.hpp"

namespace planebreaker::mesh::serial {

HeightField sample_grid(const expr::Expression& expr, const Domain& domain, Resolution resolution)
{
    HeightField field(domain, resolution);
    const expr::Program program(expr);
    for (int i = 0; i < field.nx(); ++i) {
        for (int j = 0; j < field.ny(); ++j) {
            field.at(i, j) = program.evaluate(field.x(i), field.y(j));
        }
    }
    return field;
}

namespace {

// Difference quotient along one axis through sample `k` of a line of `n`
// samples; `z(k)` is defined by the caller.
template <typename Height, typename Coord>
double partial(int k, int n, Height z, Coord coord)
{
    const bool lo = k > 0 && z(k - 1).is_defined();
    const bool hi = k + 1 < n && z(k + 1).is_defined();
    if (lo && hi) {
        return (z(k + 1).value() - z(k - 1).value()) / (coord(k + 1) - coord(k - 1));
    }
    if (hi) {
        return (z(k + 1).value() - z(k).value()) / (coord(k + 1) - coord(k));
    }
    if (lo) {
        return (z(k).value() - z(k - 1).value()) / (coord(k) - coord(k - 1));
    }
    return 0.0;
}

} // namespace

std::vector<Vec3> compute_normals(const HeightField& field)
{
    const int nx = field.nx();
    const int ny = field.ny();
    std::vector<Vec3> normals(field.values().size(), Vec3{0.0, 0.0, 1.0});

    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            if (!field.at(i, j).is_defined()) {
                continue;
            }
            const double dzdx = partial(
                i, nx, [&](int k) { return field.at(k, j); }, [&](int k) { return field.x(k); });
            const double dzdy = partial(
                j, ny, [&](int k) { return field.at(i, k); }, [&](int k) { return field.y(k); });
            normals[field.index(i, j)] = Vec3{-dzdx, -dzdy, 1.0}.normalized();
        }
    }
    return normals;
}

} // namespace planebreaker::mesh::serial
