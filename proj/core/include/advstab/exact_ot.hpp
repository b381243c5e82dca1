#pragma once

#include <cstdint>
#include <vector>

#include "advstab/cost.hpp"
#include "advstab/grid.hpp"
#include "advstab/signed_measure.hpp"

namespace advstab {

/// Discrete transportation instance: move sources a onto targets b with the
/// cost c(dist(x_i, y_j)). Distances use the periodic torus metric when a
/// positive domain length is set, otherwise plain Euclidean distance.
struct OtInstance {
    std::vector<std::array<double, 2>> src;
    std::vector<std::array<double, 2>> tgt;
    std::vector<double> a;
    std::vector<double> b;
    int dim = 2;
    double length = 0.0; ///< torus side; 0 disables wrapping

    static OtInstance from_pair(const SignedMeasurePair& pair, const Grid& grid);

    double dist(std::size_t i, std::size_t j) const;
};

struct PlanEntry {
    std::int32_t i = 0;
    std::int32_t j = 0;
    double mass = 0.0;
};

/// Sparse optimal coupling; row sums reproduce a, column sums reproduce b.
struct TransportPlan {
    std::vector<PlanEntry> entries;
};

/// Kantorovich potential on the union of supports, c-Lipschitz by
/// construction (one c-transform of the LP duals).
struct DualPotential {
    std::vector<double> source_values;
    std::vector<double> target_values;
};

struct ExactOtResult {
    double value = 0.0;      ///< primal transport cost
    double dual_value = 0.0; ///< sum a zeta(x) - sum b zeta(y)
    TransportPlan plan;
    DualPotential potential;
    long pivots = 0;

    /// certificates, evaluated on the returned primal/dual pair
    double duality_gap = 0.0;             ///< |value - dual_value|
    double feasibility_slack = 0.0;       ///< max cross-pair violation of the c-Lipschitz bound
    double complementary_slackness = 0.0; ///< max |zeta(x_i)-zeta(y_j) - c_ij| over plan entries
};

/// Exact transportation LP by network simplex on the dense bipartite graph
/// (big-M artificial root, blockwise Dantzig pricing). Throws:
///  - MassMismatch if the total masses disagree by more than 1e-9 relative,
///  - SupportCapExceeded if support_size > support_cap (callers aggregate
///    the split or switch to the entropic solver).
ExactOtResult exact_ot(const OtInstance& instance, const CostFunction& cost,
                       std::size_t support_cap = 2048);

/// Extend a dual potential to arbitrary points by the c-transform
/// zeta(z) = min_j (zeta(y_j) + c(dist(z, y_j))).
double c_transform_at(const OtInstance& instance, const CostFunction& cost,
                      const DualPotential& potential, const std::array<double, 2>& z);

} // namespace advstab
