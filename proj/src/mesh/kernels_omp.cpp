#include "planebreaker/mesh/kernels.hpp"

namespace planebreaker::mesh {

namespace {

std::vector<double> coordinates(double lo, double hi, int segments)
{
    std::vector<double> c(static_cast<std::size_t>(segments) + 1);
    for (int k = 0; k <= segments; ++k) {
        c[k] = grid_coordinate(lo, hi, k, segments);
    }
    return c;
}

} // namespace

HeightField sample_grid(const expr::Expression& expr, const Domain& domain, Resolution resolution)
{
    HeightField field(domain, resolution);
    const expr::Program program(expr);
    const std::vector<double> xs = coordinates(domain.x_min, domain.x_max, resolution.segments);
    const std::vector<double> ys = coordinates(domain.y_min, domain.y_max, resolution.segments);
    const int nx = field.nx();
    const int ny = field.ny();
    expr::EvalResult* out = field.values().data();

#pragma omp parallel
    {
        std::vector<double> stack(program.stack_depth());
#pragma omp for schedule(static)
        for (int i = 0; i < nx; ++i) {
            expr::EvalResult* row = out + static_cast<std::ptrdiff_t>(i) * ny;
            for (int j = 0; j < ny; ++j) {
                row[j] = program.evaluate(xs[i], ys[j], stack);
            }
        }
    }
    return field;
}

std::vector<Vec3> compute_normals(const HeightField& field)
{
    const int nx = field.nx();
    const int ny = field.ny();
    const Domain& d = field.domain();
    const std::vector<double> xs = coordinates(d.x_min, d.x_max, field.segments());
    const std::vector<double> ys = coordinates(d.y_min, d.y_max, field.segments());
    const expr::EvalResult* z = field.values().data();
    std::vector<Vec3> normals(field.values().size(), Vec3{0.0, 0.0, 1.0});

#pragma omp parallel for schedule(static)
    for (int i = 0; i < nx; ++i) {
        const expr::EvalResult* row = z + static_cast<std::ptrdiff_t>(i) * ny;
        const expr::EvalResult* prev = i > 0 ? row - ny : nullptr;
        const expr::EvalResult* next = i + 1 < nx ? row + ny : nullptr;

        for (int j = 0; j < ny; ++j) {
            if (!row[j].is_defined()) {
                continue;
            }
            const double c = row[j].value();

            double dzdx = 0.0;
            const bool west = prev && prev[j].is_defined();
            const bool east = next && next[j].is_defined();
            if (west && east) {
                dzdx = (next[j].value() - prev[j].value()) / (xs[i + 1] - xs[i - 1]);
            } else if (east) {
                dzdx = (next[j].value() - c) / (xs[i + 1] - xs[i]);
            } else if (west) {
                dzdx = (c - prev[j].value()) / (xs[i] - xs[i - 1]);
            }

            double dzdy = 0.0;
            const bool south = j > 0 && row[j - 1].is_defined();
            const bool north = j + 1 < ny && row[j + 1].is_defined();
            if (south && north) {
                dzdy = (row[j + 1].value() - row[j - 1].value()) / (ys[j + 1] - ys[j - 1]);
            } else if (north) {
                dzdy = (row[j + 1].value() - c) / (ys[j + 1] - ys[j]);
            } else if (south) {
                dzdy = (c - row[j - 1].value()) / (ys[j] - ys[j - 1]);
            }

            normals[static_cast<std::size_t>(i) * ny + j] = Vec3{-dzdx, -dzdy, 1.0}.normalized();
        }
    }
    return normals;
}

} // namespace planebreaker::mesh
