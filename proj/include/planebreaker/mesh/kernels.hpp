#pragma once

#include <vector>

#include "planebreaker/expr/ast.hpp"
#include "planebreaker/mesh/grid.hpp"
#include "planebreaker/mesh/vec.hpp"

namespace planebreaker::mesh {

// Grid kernels. The unqualified functions run the OpenMP versions; the
// serial namespace holds the single-threaded reference implementations that
// the tests and the benchmark compare against. Both produce bit-identical
// results.

/// Evaluates expr at every grid point of domain.
HeightField sample_grid(const expr::Expression& expr, const Domain& domain, Resolution resolution);

/// Per-sample unit normals normalize(−∂z/∂x, −∂z/∂y, 1), indexed like the
/// field. Partials are central differences, one-sided at borders or next to
/// an Undefined neighbour, and 0 when neither neighbour is defined.
/// Undefined samples get (0, 0, 1).
std::vector<Vec3> compute_normals(const HeightField& field);

namespace serial {

HeightField sample_grid(const expr::Expression& expr, const Domain& domain, Resolution resolution);
std::vector<Vec3> compute_normals(const HeightField& field);

} // namespace serial

} // namespace planebreaker::mesh
