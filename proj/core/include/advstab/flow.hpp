#pragma once

#include <array>
#include <vector>

#include "advstab/velocity.hpp"

namespace advstab {

/// Evaluate a face-centered velocity at an arbitrary point by bilinear
/// interpolation of each component on its own staggered lattice.
std::array<double, 2> interpolate_velocity(const VectorField& u, std::array<double, 2> x);

/// RK4 integration of dx/dt = u(t,x) with periodic wrapping.
std::array<double, 2> flow_map(const VelocitySequence& u, std::array<double, 2> x0,
                               double t_final, double dt);

/// Trajectory-separation report for two velocity fields: for
/// delta = |u1-u2| in L1(Linf), the worst sample of log(sep/delta + 1)
/// against the Lipschitz budget |grad u1| in L1(Linf) + 1.
struct FlowStabilityReport {
    double delta = 0.0;         ///< measured L1(Linf) distance of the fields
    double lhs_max = 0.0;       ///< max over samples of log(separation/delta + 1)
    double grad_budget = 0.0;   ///< |grad u1| in L1(Linf) plus 1
    double fitted_c = 0.0;      ///< lhs_max / grad_budget
    bool trivial = false;       ///< delta == 0 with identical fields
    std::vector<double> lhs_per_sample;
};

FlowStabilityReport flow_log_stability(const VelocitySequence& u1, const VelocitySequence& u2,
                                       const std::vector<std::array<double, 2>>& samples,
                                       double t_final, double dt);

/// Left-Riemann time quadrature of max|u1 - u2|.
double l1_linf_distance(const VelocitySequence& u1, const VelocitySequence& u2);

} // namespace advstab
