#include "planebreaker/mesh/obj.hpp"

#include <cstdio>
#include <sstream>

namespace planebreaker::mesh {

namespace {

void put(std::ostream& out, const char* fmt, double a, double b, double c)
{
    char buf[256];
    const int n = std::snprintf(buf, sizeof buf, fmt, a, b, c);
    if (n > 0 && static_cast<std::size_t>(n) < sizeof buf) {
        out.write(buf, n);
        return;
    }
    std::string big(static_cast<std::size_t>(n) + 1, '\0');
    std::snprintf(big.data(), big.size(), fmt, a, b, c);
    out.write(big.data(), n);
}

} // namespace

void write_obj(std::ostream& out, const SurfaceMesh& mesh)
{
    out << "# " << mesh.label << '\n';
    out << "# vertices " << mesh.positions.size() << " triangles " << mesh.indices.size() << '\n';
    for (std::size_t k = 0; k < mesh.positions.size(); ++k) {
        const Vec3& p = mesh.positions[k];
        const Rgb& c = mesh.colors[k];
        put(out, "v %.6f %.6f %.6f", p.x, p.y, p.z);
        put(out, " %.6f %.6f %.6f\n", c.r, c.g, c.b);
    }
    for (const Vec3& n : mesh.normals) {
        put(out, "vn %.6f %.6f %.6f\n", n.x, n.y, n.z);
    }
    for (const Triangle& t : mesh.indices) {
        const std::uint32_t a = t[0] + 1;
        const std::uint32_t b = t[1] + 1;
        const std::uint32_t c = t[2] + 1;
        out << "f " << a << "//" << a << ' ' << b << "//" << b << ' ' << c << "//" << c << '\n';
    }
}

std::string export_obj(const SurfaceMesh& mesh)
{
    std::ostringstream out;
    write_obj(out, mesh);
    return out.str();
}

} // namespace planebreaker::mesh
