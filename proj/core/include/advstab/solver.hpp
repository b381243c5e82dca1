#pragma once

#include <string>
#include <vector>

#include "advstab/velocity.hpp"

namespace advstab {

/// Time integration parameters for the advection-diffusion equation.
///
/// With dt = 0 the step is chosen from the stability bound
///   dt = cfl_target / (sum_a max|u_a|/h  +  2 dim kappa / h^2)
/// (diffusion term only for the explicit scheme) and then rounded down so
/// that an integer number of steps lands exactly on t_final. A fixed dt
/// that violates the bound raises CflViolation.
struct SolverConfig {
    enum class Scheme { explicit_euler, imex };

    double kappa = 0.0;
    double t_final = 1.0;
    double dt = 0.0; ///< 0 = automatic
    Scheme scheme = Scheme::explicit_euler;
    double cfl_target = 0.9;
    /// Diagnostics sampling stride in steps; 0 = choose so that at most
    /// ~512 rows are recorded.
    int sample_every = 0;
    /// Exponent of the configurable L^q diagnostic column.
    double lq_exponent = 2.0;
};

/// One sampled row of solution functionals.
struct DiagnosticsRow {
    double t = 0.0;
    double mass = 0.0;
    double l1 = 0.0;
    double lq = 0.0;
    double linf = 0.0;
    double entropy = 0.0;  ///< integral of theta log theta (floored density)
    double fisher = 0.0;   ///< integral of |grad theta|^2 / theta (floored)
    double moment1 = 0.0;  ///< integral of torus-dist(x, center) * theta
    double gradl1 = 0.0;   ///< integral of |grad theta| (centered differences)
};

struct Diagnostics {
    std::vector<DiagnosticsRow> rows;
    double lq_exponent = 2.0;

    /// Fixed column order: t,mass,l1,lq,linf,entropy,fisher,moment1,gradl1.
    std::string to_csv() const;
};

struct SolveResult {
    ScalarField theta;
    Diagnostics diagnostics;
    double dt_used = 0.0;
    long steps = 0;
};

/// March theta0 to t_final under the velocity sequence:
/// explicit_euler: theta += dt (kappa lap(theta) - div(u theta)),
/// imex:           upwind advection explicit, diffusion solved exactly in
///                 Fourier space of the discrete Laplacian.
/// Both updates are in flux form, so mass is conserved to rounding.
SolveResult solve(const ScalarField& theta0, const VelocitySequence& u,
                  const SolverConfig& config);

SolveResult solve(const ScalarField& theta0, const VectorField& u,
                  const SolverConfig& config);

/// Functionals of a single snapshot. Entropy and Fisher information floor
/// the density at 1e-14 max|theta|; the floor never enters the update.
DiagnosticsRow diagnostics_of(const ScalarField& theta, double lq_exponent = 2.0,
                              double t = 0.0);

/// One implicit diffusion solve (I - kappa dt Lap_h) x = rhs by spectral
/// diagonalization. Exposed for the residual check in the tests.
ScalarField diffuse_spectral(const ScalarField& rhs, double kappa, double dt);

} // namespace advstab
