#pragma once

#include <cstdint>

#include "advstab/report.hpp"
#include "advstab/solver.hpp"
#include "advstab/transport.hpp"

namespace advstab {

/// Parameter sweep description. Every sweep is deterministic given the spec
/// (including the seed), and sweep points are independent, so they may run
/// concurrently (jobs > 1).
struct SweepSpec {
    enum class Channel { velocity, diffusivity, initial_data, rough_field };
    enum class DeltaPolicy { matched, fixed };

    Channel channel = Channel::velocity;
    /// Perturbation parameters, descending. At least 4 values spanning two
    /// decades for the rate channels.
    std::vector<double> epsilons;

    int dim = 1;
    int n = 1024;
    double length = 1.0;
    double kappa = 0.0;
    double t_final = 1.0;
    SolverConfig::Scheme scheme = SolverConfig::Scheme::explicit_euler;
    double cfl = 0.95;

    DeltaPolicy delta_policy = DeltaPolicy::matched;
    double delta_fixed = 1e-4;
    OtMethod method = OtMethod::exact;
    std::size_t support_cap = 2048;
    double p_exponent = 2.0;

    std::uint64_t seed = 1;
    int jobs = 1;

    // velocity channel: wavepacket data and a single low-mode perturbation
    double base_amplitude = 0.15;     ///< amplitude of the base field
    double perturbation_gain = 4.0;   ///< perturbation amplitude = gain * eps
    double envelope_sigma = 0.05;     ///< wavepacket envelope width (fraction of L)
    int packet_wavelength_cells = 16; ///< carrier wavelength in cells

    // diffusivity channel
    double kappa2 = 5e-4;      ///< fixed smaller diffusivity
    double sigma0 = 0.02;      ///< initial Gaussian width
    double kappa_sum = 1.25;   ///< fixed kappa1+kappa2 for the rate fit part

    // initial data channel
    double stripe_cells = 4.0;     ///< stripe width of the rough datum (in cells)
    std::vector<int> data_meshes = {8, 16, 32, 64};

    // rough field channel: a vortex patch carrying fine-scale signed
    // texture, the rough-vorticity regime the convolution bound addresses
    double patch_radius_cells = 16.0;   ///< vortex blob radius (in cells)
    double texture_amplitude = 18.0;    ///< relative amplitude of the texture
    int texture_wavelength_cells = 4;   ///< texture wavelength (in cells)
    std::vector<double> bound_exponents = {1.0, 1.25, 1.5};
    double ball_fraction = 0.25;        ///< s = fraction of L around the patch
};

ExperimentReport sweep_velocity(const SweepSpec& spec);
ExperimentReport sweep_diffusivity(const SweepSpec& spec);
ExperimentReport sweep_initial_data(const SweepSpec& spec);
ExperimentReport rough_field_probe(const SweepSpec& spec);

/// Dispatch on spec.channel.
ExperimentReport run_sweep(const SweepSpec& spec);

} // namespace advstab
