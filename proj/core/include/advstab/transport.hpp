#pragma once

#include <optional>

#include "advstab/exact_ot.hpp"
#include "advstab/sinkhorn.hpp"

namespace advstab {

enum class OtMethod { exact, sinkhorn };

/// Everything needed to trace a reported distance value back to the solve
/// that produced it.
struct DistanceProvenance {
    std::string method;
    std::string cost_kind;
    double delta = 0.0;
    double reg = 0.0;
    double split_threshold = 0.0;
    double rebalance_factor = 1.0;
    int aggregation_block = 1;
    std::size_t support_size = 0;
    std::size_t support_cap = 0;
    double mass_tolerance = 1e-10;
    double duality_gap_tol = 1e-8;
    double feasibility_tol = 1e-9;
    double cs_tol = 1e-7;
    double sinkhorn_marginal_tol = 1e-9;
};

struct DistanceResult {
    double value = 0.0;
    DistanceProvenance provenance;
    std::optional<ExactOtResult> exact;
    std::optional<SinkhornResult> entropic;
};

struct DistanceOptions {
    OtMethod method = OtMethod::exact;
    double reg = 1e-3;
    int max_iter = 20000;
    std::size_t support_cap = 2048;
    /// Split threshold; negative selects the default 1e-13 max|theta|.
    double threshold = -1.0;
    /// Aggregate oversized splits instead of failing.
    bool allow_aggregation = true;
};

/// Kantorovich-Rubinstein distance between equal-mass fields: split the
/// difference, then solve exactly or entropically. Masses must agree to
/// 1e-10 relative.
DistanceResult distance(const ScalarField& theta1, const ScalarField& theta2,
                        const CostFunction& cost, const DistanceOptions& options = {});

/// Distance of a single zero-mass field (its positive vs negative part).
DistanceResult distance_zero_mass(const ScalarField& theta, const CostFunction& cost,
                                  const DistanceOptions& options = {});

/// Independent 1D Wasserstein-1 oracle through cumulative functions,
/// h * sum |F_mu - F_nu|, valid for data supported away from the wrap seam.
double w1_1d_oracle(const ScalarField& mu, const ScalarField& nu);

/// Both sides of the bounded-cost reduction
///   D^b(theta) <= D_delta(theta)/log(1/gamma) + (delta/gamma) |theta|_L1.
struct BoundOtdReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0; ///< rhs - lhs; nonnegative when the inequality holds
    double d_bounded = 0.0;
    double d_delta = 0.0;
    double l1 = 0.0;
    bool holds = false;
};

BoundOtdReport bound_otd_check(const ScalarField& theta, double gamma, double delta,
                               const DistanceOptions& options = {});

/// Time-derivative identity check: centered finite difference of
/// t -> D_c(theta1(t), theta2(t)) against the dual-potential integral
///   int grad zeta . (u1 theta1 - u2 theta2) - int grad zeta . (k1 grad theta1 - k2 grad theta2).
struct DtdReport {
    double fd_derivative = 0.0;
    double formula_value = 0.0;
    double advective_term = 0.0;
    double diffusive_term = 0.0;
    double relative_gap = 0.0;
    double distance_at_t = 0.0;
};

/// Snapshots of one trajectory at t - dt_fd, t, t + dt_fd.
struct TrajectoryWindow {
    ScalarField before;
    ScalarField at;
    ScalarField after;
};

DtdReport dtD_check(const TrajectoryWindow& theta1, const TrajectoryWindow& theta2,
                    const VectorField& u1, const VectorField& u2, double kappa1, double kappa2,
                    double dt_fd, const CostFunction& cost,
                    const DistanceOptions& options = {});

/// Dual potential extended to every grid cell by the c-transform; used by
/// the derivative identity.
ScalarField extend_potential_to_grid(const Grid& grid, const OtInstance& instance,
                                     const CostFunction& cost, const DualPotential& potential);

} // namespace advstab
