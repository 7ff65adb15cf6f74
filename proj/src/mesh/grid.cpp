#include "planebreaker/mesh/grid.hpp"

#include <cmath>
#include <string>

namespace planebreaker::mesh {

namespace {

void check_interval(double lo, double hi, const char* what)
{
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw std::invalid_argument(std::string(what) + " bounds must be finite");
    }
    if (!(lo < hi)) {
        throw std::invalid_argument(std::string(what) + " requires min < max");
    }
}

} // namespace

void Domain::validate() const
{
    check_interval(x_min, x_max, "x domain");
    check_interval(y_min, y_max, "y domain");
}

void ZLimits::validate() const
{
    check_interval(z_min, z_max, "z limits");
}

void Resolution::validate() const
{
    if (segments < kMin || segments > kMax) {
        throw std::invalid_argument("segments must be in [1, 1024], got " + std::to_string(segments));
    }
}

double grid_coordinate(double lo, double hi, int index, int segments)
{
    if (index == segments) {
        return hi;
    }
    return lo + static_cast<double>(index) * (hi - lo) / static_cast<double>(segments);
}

HeightField::HeightField(Domain domain, Resolution resolution)
    : domain_(domain), segments_(resolution.segments)
{
    domain_.validate();
    resolution.validate();
    values_.resize(static_cast<std::size_t>(nx()) * static_cast<std::size_t>(ny()));
}

} // namespace planebreaker::mesh
