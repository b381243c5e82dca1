#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "advstab/field.hpp"

namespace advstab {

/// Catalogue of synthetic velocity families used by the experiments.
struct FieldFamilySpec {
    enum class Kind { uniform, shear, rotation, oscillatory, vortex_patch, custom };

    Kind kind = Kind::uniform;
    double amplitude = 1.0;
    /// Mode index for the oscillatory family; wavelength L/mode must be >= 4h.
    int mode = 1;
    /// Phase offset for oscillatory fields, radians.
    double phase = 0.0;
    std::array<double, 2> center = {0.0, 0.0};
    double radius = 0.0;
    double circulation = 0.0;
    std::function<double(double, double)> custom_ux;
    std::function<double(double, double)> custom_uy;
};

/// Sample the named analytic family on the faces of a grid.
///
///   uniform      (A, 0); the only divergence-free 1D family
///   shear        (A sin(2 pi y / L), 0)
///   rotation     A (-(y-c2), x-c1) inside radius, smooth taper to zero
///   oscillatory  (A sin(2 pi mode y / L + phase), 0); in 1D along x
///   vortex_patch solid-body core, 1/r tail, tapered to zero near the box edge
VectorField generate_field(const FieldFamilySpec& spec, const Grid& grid);

/// Velocity norms used by the stability hypotheses.
struct FieldNorms {
    double w1p_seminorm = 0.0; ///< L^p norm of the centered-difference gradient tensor
    double lp_norm = 0.0;      ///< L^p norm of |u| at cell centers
    double weak_lp = 0.0;      ///< weak-L^p quasi-norm of |u|
    double neg_div_sup = 0.0;  ///< max over cells of (div u)^-
};

FieldNorms field_norms(const VectorField& u, double p);

/// Face-based conservative divergence (the one the upwind fluxes see).
ScalarField face_divergence(const VectorField& u);

/// Piecewise-constant-in-time velocity on [0, t_final]; a single frame is a
/// steady field. Frame k covers [k dt, (k+1) dt) with dt = t_final / frames.
struct VelocitySequence {
    std::vector<VectorField> frames;
    double t_final = 1.0;

    static VelocitySequence steady(VectorField u, double t_final);
    const VectorField& at_time(double t) const;
    double frame_dt() const { return t_final / static_cast<double>(frames.size()); }
};

/// Left-Riemann time quadrature of the spatial L^p norm of |u1 - u2|.
double l1_lp_distance(const VelocitySequence& u1, const VelocitySequence& u2, double p);

/// Left-Riemann time quadrature of the max norm of the gradient tensor.
double l1_linf_gradient(const VelocitySequence& u);

} // namespace advstab
