#pragma once

#include <array>
#include <cstdint>

#include "advstab/error.hpp"

namespace advstab {

/// Uniform periodic grid on the torus [0,L)^dim, dim = 1 or 2.
///
/// Cells are indexed 0..n-1 per axis with centers at (i + 1/2) h and the
/// layout is row-major with x fastest: idx = iy * n + ix. Index arithmetic
/// wraps, so every cell has a full stencil of neighbours.
class Grid {
public:
    Grid(int dim, int n_per_axis, double side_length);

    int dim() const { return dim_; }
    int n() const { return n_; }
    double length() const { return length_; }
    double spacing() const { return h_; }
    std::int64_t cell_count() const { return cells_; }
    /// Cell measure h^dim, the quadrature weight of every norm and mass sum.
    double cell_measure() const { return measure_; }

    /// Wrap an axis index into [0, n).
    int wrap(int i) const {
        i %= n_;
        return i < 0 ? i + n_ : i;
    }

    std::int64_t index(int ix, int iy = 0) const {
        return static_cast<std::int64_t>(wrap(iy)) * n_ + wrap(ix);
    }

    double center(int i) const { return (i + 0.5) * h_; }

    /// Signed displacement a-b reduced to the principal torus image [-L/2, L/2).
    double wrap_delta(double d) const {
        while (d >= 0.5 * length_) d -= length_;
        while (d < -0.5 * length_) d += length_;
        return d;
    }

    /// Torus distance between two points given per-axis coordinates.
    double distance(const std::array<double, 2>& a, const std::array<double, 2>& b) const;

    bool same_as(const Grid& other) const {
        return dim_ == other.dim_ && n_ == other.n_ && length_ == other.length_;
    }

private:
    int dim_;
    int n_;
    double length_;
    double h_;
    std::int64_t cells_;
    double measure_;
};

} // namespace advstab
