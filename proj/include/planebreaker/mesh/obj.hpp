#pragma once

#include <ostream>
#include <string>

#include "planebreaker/mesh/surface.hpp"

namespace planebreaker::mesh {

/// Wavefront OBJ with per-vertex colors (`v x y z r g b`), `vn` normals and
/// `f a//a b//b c//c` faces. Numbers carry six fractional digits.
void write_obj(std::ostream& out, const SurfaceMesh& mesh);

std::string export_obj(const SurfaceMesh& mesh);

} // namespace planebreaker::mesh
