#include "advstab/grid.hpp"

#include <cmath>

namespace advstab {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}

Grid::Grid(int dim, int n_per_axis, double side_length)
    : dim_(dim), n_(n_per_axis), length_(side_length) {
    if (dim != 1 && dim != 2)
        throw InvalidParameter("Grid: dim must be 1 or 2");
    if (!is_power_of_two(n_per_axis))
        throw InvalidParameter("Grid: n_per_axis must be a power of two");
    if (!(side_length > 0.0) || !std::isfinite(side_length))
        throw InvalidParameter("Grid: side_length must be positive and finite");
    h_ = length_ / n_;
    cells_ = 1;
    for (int d = 0; d < dim_; ++d) cells_ *= n_;
    measure_ = (dim_ == 1) ? h_ : h_ * h_;
}

double Grid::distance(const std::array<double, 2>& a, const std::array<double, 2>& b) const {
    double dx = wrap_delta(a[0] - b[0]);
    if (dim_ == 1) return std::abs(dx);
    double dy = wrap_delta(a[1] - b[1]);
    return std::sqrt(dx * dx + dy * dy);
}

} // namespace advstab
