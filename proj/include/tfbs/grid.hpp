#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace tfbs {

// Uniform spatial mesh on [left, right] with `intervals` cells. Nodes are
// x_m = left + m*spacing; m may step outside 0..intervals to address the
// ghost nodes used by the spline boundary closures (they are computed on
// demand, never stored).
class SpatialGrid {
public:
    SpatialGrid(double left, double right, std::size_t intervals)
        : left_(left), right_(right), intervals_(intervals),
          spacing_((right - left) / static_cast<double>(intervals)) {
        if (!(std::isfinite(left) && std::isfinite(right)))
            throw std::invalid_argument("grid endpoints must be finite");
        if (!(right > left))
            throw std::invalid_argument("grid requires right endpoint > left endpoint");
        if (intervals < 2)
            throw std::invalid_argument("grid requires at least 2 intervals");
    }

    double left() const noexcept { return left_; }
    double right() const noexcept { return right_; }
    std::size_t intervals() const noexcept { return intervals_; }
    std::size_t node_count() const noexcept { return intervals_ + 1; }
    double spacing() const noexcept { return spacing_; }
    double node(std::ptrdiff_t m) const noexcept {
        return left_ + spacing_ * static_cast<double>(m);
    }

private:
    double left_;
    double right_;
    std::size_t intervals_;
    double spacing_;
};

}  // namespace tfbs
