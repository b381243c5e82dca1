#pragma once

#include "advstab/exact_ot.hpp"

namespace advstab {

struct SinkhornResult {
    double value = 0.0;          ///< transport part <pi, C> of the converged plan
    double debiased_value = 0.0; ///< value - (self(a) + self(b)) / 2
    std::vector<double> f;       ///< source potential
    std::vector<double> g;       ///< target potential
    int iterations = 0;
    double marginal_violation = 0.0;
};

/// Entropic-regularized transport by log-domain Sinkhorn iterations.
/// Converges when the L1 marginal violation drops below tol relative to the
/// total mass; otherwise throws NoConvergence carrying the residual.
SinkhornResult sinkhorn_ot(const OtInstance& instance, const CostFunction& cost, double reg,
                           int max_iter = 20000, double tol = 1e-9);

} // namespace advstab
