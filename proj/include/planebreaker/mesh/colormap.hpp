#pragma once

#include <string_view>
#include <vector>

#include "planebreaker/mesh/vec.hpp"

namespace planebreaker::mesh {

/// Piecewise-linear gradient over [0, 1].
class ColorMap {
public:
    struct Stop {
        double t;
        Rgb rgb;

        friend bool operator==(const Stop&, const Stop&) = default;
    };

    /// Requires at least two stops, strictly increasing t, first t = 0 and
    /// last t = 1, and channels in [0, 1]; throws std::invalid_argument
    /// otherwise.
    explicit ColorMap(std::vector<Stop> stops);

    /// Five stops sampled from viridis.
    static const ColorMap& viridis();

    /// Reads a table of `t r g b` rows. Blank lines and `#` comments are
    /// ignored.
    static ColorMap parse_table(std::string_view text);

    const std::vector<Stop>& stops() const noexcept { return stops_; }

    /// Clamps t to [0, 1] and interpolates between the bracketing stops.
    Rgb map(double t) const;

private:
    std::vector<Stop> stops_;
};

inline Rgb map_color(const ColorMap& cmap, double t)
{
    return cmap.map(t);
}

} // namespace planebreaker::mesh
