#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "planebreaker/expr/eval.hpp"

namespace planebreaker::mesh {

/// Rectangular input domain in world units.
struct Domain {
    double x_min;
    double x_max;
    double y_min;
    double y_max;

    /// Throws std::invalid_argument unless min < max on both axes and all
    /// bounds are finite.
    void validate() const;

    friend bool operator==(const Domain&, const Domain&) = default;
};

/// Visible height range.
struct ZLimits {
    double z_min;
    double z_max;

    void validate() const;

    friend bool operator==(const ZLimits&, const ZLimits&) = default;
};

/// Cells per axis.
struct Resolution {
    static constexpr int kMin = 1;
    static constexpr int kMax = 1024;

    int segments;

    void validate() const;

    friend bool operator==(const Resolution&, const Resolution&) = default;
};

inline constexpr Domain kDefaultDomain{-5.0, 5.0, -5.0, 5.0};
inline constexpr ZLimits kDefaultZLimits{-5.0, 5.0};
inline constexpr Resolution kWireResolution{128};
inline constexpr Resolution kPreviewResolution{64};

/// Coordinate of grid line `index` out of `segments` over [lo, hi]:
/// lo + index·(hi − lo)/segments, with the last line pinned to hi exactly.
double grid_coordinate(double lo, double hi, int index, int segments);

/// Samples of f over a (segments + 1)² grid. Storage is row-major with the
/// x index outermost: at(i, j) is the sample at (x_i, y_j).
class HeightField {
public:
    HeightField(Domain domain, Resolution resolution);

    const Domain& domain() const noexcept { return domain_; }
    int segments() const noexcept { return segments_; }
    int nx() const noexcept { return segments_ + 1; }
    int ny() const noexcept { return segments_ + 1; }

    double x(int i) const { return grid_coordinate(domain_.x_min, domain_.x_max, i, segments_); }
    double y(int j) const { return grid_coordinate(domain_.y_min, domain_.y_max, j, segments_); }

    std::size_t index(int i, int j) const noexcept
    {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(ny()) + static_cast<std::size_t>(j);
    }

    expr::EvalResult at(int i, int j) const { return values_[index(i, j)]; }
    expr::EvalResult& at(int i, int j) { return values_[index(i, j)]; }

    const std::vector<expr::EvalResult>& values() const noexcept { return values_; }
    std::vector<expr::EvalResult>& values() noexcept { return values_; }

private:
    Domain domain_;
    int segments_;
    std::vector<expr::EvalResult> values_;
};

} // namespace planebreaker::mesh
