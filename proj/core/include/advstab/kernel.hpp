#pragma once

#include <functional>
#include <vector>

#include "advstab/field.hpp"

namespace advstab {

/// Singular convolution kernel producing a velocity from a scalar density.
///
/// biot_savart_2d recovers the divergence-free field of a 2D vorticity. It
/// is realized as the discrete curl of the convolved streamfunction: the
/// log-kernel is sampled at grid nodes (half-cell offsets from the sources,
/// so the singularity is never evaluated and the self-cell does not advect
/// itself), and faces take node differences. The face-based divergence of
/// the result vanishes identically.
///
/// custom_radial builds u(x) = sum_y k(|x-y|) e(x-y) w(y) h^d with the
/// tangential unit vector e(z) = z_perp/|z| and k(0) := 0.
///
/// Periodic images are truncated at one ring of neighbour boxes; the
/// truncation error is O(1/L) for compactly supported densities.
struct KernelSpec {
    enum class Kind { biot_savart_2d, custom_radial };
    Kind kind = Kind::biot_savart_2d;
    /// Radial profile for custom kernels; should decay like 1/r^(d-1).
    std::function<double(double)> profile;
};

enum class ConvolveMethod { direct, fft, automatic };

/// Convolve a (generalized) vorticity with the kernel. The direct method is
/// the O(N^2) correctness oracle; the fft path computes the same circular
/// convolution and agrees with it to rounding.
VectorField kernel_convolve(const KernelSpec& kernel, const ScalarField& omega,
                            ConvolveMethod method = ConvolveMethod::automatic);

/// Sampled checks of the singular-kernel assumptions for a tabulated kernel:
/// the growth constant sup |k| r^(d-1) over the sampled range and the max of
/// |integral of grad k over an annulus| over log-spaced radius pairs.
struct KernelAssumptionReport {
    double growth_constant = 0.0;
    double annulus_gradient_max = 0.0;
    int pairs_sampled = 0;
};

KernelAssumptionReport sample_kernel_assumptions(const KernelSpec& kernel, const Grid& grid);

} // namespace advstab
