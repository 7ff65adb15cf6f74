#include "planebreaker/mesh/colormap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace planebreaker::mesh {

namespace {

bool in_unit(double v)
{
    return v >= 0.0 && v <= 1.0;
}

} // namespace

ColorMap::ColorMap(std::vector<Stop> stops) : stops_(std::move(stops))
{
    if (stops_.size() < 2) {
        throw std::invalid_argument("colormap needs at least two stops");
    }
    if (stops_.front().t != 0.0 || stops_.back().t != 1.0) {
        throw std::invalid_argument("colormap stops must start at t = 0 and end at t = 1");
    }
    for (std::size_t k = 0; k < stops_.size(); ++k) {
        const Stop& s = stops_[k];
        if (k > 0 && !(stops_[k - 1].t < s.t)) {
            throw std::invalid_argument("colormap stop positions must be strictly increasing");
        }
        if (!in_unit(s.rgb.r) || !in_unit(s.rgb.g) || !in_unit(s.rgb.b)) {
            throw std::invalid_argument("colormap channels must lie in [0, 1]");
        }
    }
}

const ColorMap& ColorMap::viridis()
{
    static const ColorMap cmap({
        {0.00, {0.267004, 0.004874, 0.329415}},
        {0.25, {0.229739, 0.322361, 0.545706}},
        {0.50, {0.127568, 0.566949, 0.550556}},
        {0.75, {0.369214, 0.788888, 0.382914}},
        {1.00, {0.993248, 0.906157, 0.143936}},
    });
    return cmap;
}

ColorMap ColorMap::parse_table(std::string_view text)
{
    std::vector<Stop> stops;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream row(line);
        Stop s{};
        if (!(row >> s.t)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                continue;
            }
            throw std::invalid_argument("colormap line " + std::to_string(line_no) + ": expected `t r g b`");
        }
        std::string extra;
        if (!(row >> s.rgb.r >> s.rgb.g >> s.rgb.b) || (row >> extra)) {
            throw std::invalid_argument("colormap line " + std::to_string(line_no) + ": expected `t r g b`");
        }
        stops.push_back(s);
    }
    return ColorMap(std::move(stops));
}

Rgb ColorMap::map(double t) const
{
    if (!(t > stops_.front().t)) {
        return stops_.front().rgb; // also catches NaN
    }
    if (t >= stops_.back().t) {
        return stops_.back().rgb;
    }
    const auto upper = std::upper_bound(stops_.begin(), stops_.end(), t,
                                        [](double v, const Stop& s) { return v < s.t; });
    const Stop& a = *(upper - 1);
    const Stop& b = *upper;
    const double f = (t - a.t) / (b.t - a.t);
    return Rgb{
        a.rgb.r + f * (b.rgb.r - a.rgb.r),
        a.rgb.g + f * (b.rgb.g - a.rgb.g),
        a.rgb.b + f * (b.rgb.b - a.rgb.b),
    };
}

} // namespace planebreaker::mesh
