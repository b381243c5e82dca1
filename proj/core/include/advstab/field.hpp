#pragma once

#include <functional>
#include <vector>

#include "advstab/grid.hpp"

namespace advstab {

/// Cell-averaged scalar density on a periodic grid.
///
/// Values are plain cell averages; all norms and the mass use the midpoint
/// rule with weight h^dim. Fields are value types: operations return new
/// fields and never mutate their inputs.
class ScalarField {
public:
    explicit ScalarField(const Grid& grid, double fill = 0.0)
        : grid_(grid), values_(static_cast<std::size_t>(grid.cell_count()), fill) {}

    /// Sample f at cell centers. In 1D the second argument is 0.
    static ScalarField from_function(const Grid& grid,
                                     const std::function<double(double, double)>& f);

    const Grid& grid() const { return grid_; }
    std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }

    double operator[](std::int64_t i) const { return values_[static_cast<std::size_t>(i)]; }
    double& operator[](std::int64_t i) { return values_[static_cast<std::size_t>(i)]; }

    /// Wrapping accessor by per-axis indices.
    double at(int ix, int iy = 0) const { return values_[static_cast<std::size_t>(grid_.index(ix, iy))]; }
    double& at(int ix, int iy = 0) { return values_[static_cast<std::size_t>(grid_.index(ix, iy))]; }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    /// h^dim * sum of values.
    double mass() const;
    double max_abs() const;
    bool all_finite() const;

    /// Periodic translation by whole cells; shifting by n is the identity.
    ScalarField shift_cells(int sx, int sy = 0) const;

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double s);

    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(ScalarField a, double s) { return a *= s; }
    friend ScalarField operator*(double s, ScalarField a) { return a *= s; }

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Velocity field with one face-centered component per axis.
///
/// Component a lives on the faces orthogonal to axis a: component 0 at
/// (ix*h, (iy+1/2)h), component 1 at ((ix+1/2)h, iy*h), one face per cell.
/// The staggering makes flux-form divergences telescope exactly.
class VectorField {
public:
    explicit VectorField(const Grid& grid, double fill = 0.0);

    /// Sample analytic components at their own face positions.
    static VectorField from_function(const Grid& grid,
                                     const std::function<double(double, double)>& ux,
                                     const std::function<double(double, double)>& uy);

    const Grid& grid() const { return grid_; }

    const std::vector<double>& comp(int axis) const { return comp_[axis]; }
    std::vector<double>& comp(int axis) { return comp_[axis]; }

    double face(int axis, int ix, int iy = 0) const {
        return comp_[axis][static_cast<std::size_t>(grid_.index(ix, iy))];
    }
    double& face(int axis, int ix, int iy = 0) {
        return comp_[axis][static_cast<std::size_t>(grid_.index(ix, iy))];
    }

    double max_abs() const;
    double max_abs_comp(int axis) const;
    bool all_finite() const;

    VectorField& operator+=(const VectorField& other);
    VectorField& operator-=(const VectorField& other);
    VectorField& operator*=(double s);
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(VectorField a, double s) { return a *= s; }

private:
    Grid grid_;
    std::array<std::vector<double>, 2> comp_;
};

// --- discrete norms -------------------------------------------------------

/// (h^dim sum |v|^q)^(1/q); q may be infinity (max norm). Throws for q < 1.
double lq_norm(const ScalarField& f, double q);

/// Weak Lebesgue quasi-norm: sup over observed levels lambda of
/// lambda * mu{|f| >= lambda}^(1/p) with mu the cell measure.
double weak_lp_quasinorm(const ScalarField& f, double p);

// --- stencils -------------------------------------------------------------

/// Three-point (per axis) discrete Laplacian with periodic wrap.
ScalarField laplacian(const ScalarField& f);

/// Conservative flux-form divergence of (u * f) with first-order upwinding
/// on faces. The cell sum telescopes, so mass(result) vanishes to rounding.
ScalarField upwind_divergence(const VectorField& u, const ScalarField& f);

/// Centered-difference gradient component along one axis, at cell centers.
ScalarField centered_derivative(const ScalarField& f, int axis);

// --- maximal function and mollification ------------------------------------

/// Dyadic radii h, 2h, 4h, ... up to L/2, the default radius ladder.
std::vector<double> dyadic_radii(const Grid& grid);

/// Discrete Hardy--Littlewood maximal function: at each cell the max of the
/// cell value |f| itself (the vanishing-radius ball) and the averages of |f|
/// over the balls of the supplied radii (cell-center distance, boundary ties
/// included). A finite radius set under-approximates the supremum over all
/// R > 0; the seed keeps Mf >= |f| pointwise as in the continuum.
ScalarField maximal_function(const ScalarField& f, const std::vector<double>& radii);

/// Periodic convolution with a smooth nonnegative unit-mass bump of radius
/// eps; preserves mass to rounding. Requires eps >= h.
ScalarField mollify(const ScalarField& f, double eps);

} // namespace advstab
