#pragma once

#include <cmath>

namespace planebreaker::mesh {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double length() const { return std::sqrt(x * x + y * y + z * z); }

    Vec3 normalized() const
    {
        const double len = length();
        return {x / len, y / len, z / len};
    }

    friend bool operator==(const Vec3&, const Vec3&) = default;
};

struct Rgb {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

} // namespace planebreaker::mesh
