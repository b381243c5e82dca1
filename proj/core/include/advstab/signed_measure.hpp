#pragma once

#include <array>
#include <vector>

#include "advstab/field.hpp"

namespace advstab {

struct WeightedPoint {
    std::array<double, 2> x = {0.0, 0.0};
    double w = 0.0;
};

/// Positive/negative parts of a zero-mass density as weighted point clouds.
struct SignedMeasurePair {
    std::vector<WeightedPoint> positive;
    std::vector<WeightedPoint> negative;
    /// Uniform factor applied to the lighter side to rebalance after
    /// thresholding (1 when nothing was dropped).
    double rebalance_factor = 1.0;
    /// Cells per axis merged by block aggregation (1 = untouched).
    int aggregation_block = 1;

    double positive_mass() const;
    double negative_mass() const;
    bool empty() const { return positive.empty() && negative.empty(); }
    std::size_t support_size() const { return positive.size() + negative.size(); }
};

/// Split a zero-total-mass field into weighted positive/negative parts at
/// cell centers. Cells with |value| <= threshold are dropped and the masses
/// rebalanced by uniform scaling of the lighter side. threshold < 0 selects
/// the default 1e-13 max|theta|. Throws MassMismatch unless
/// |mass| <= 1e-10 * L1 norm.
SignedMeasurePair signed_split(const ScalarField& theta, double threshold = -1.0);

/// Merge points into blocks of `block` cells per axis, one point per block
/// and sign at the mass-weighted centroid. Used to pull oversized supports
/// under the exact-solver cap; the position quantization is O(block * h).
SignedMeasurePair block_aggregate(const SignedMeasurePair& pair, const Grid& grid, int block);

/// Smallest power-of-two aggregation block that brings the support size
/// under the cap (1 if it already fits).
int aggregation_block_for_cap(const SignedMeasurePair& pair, std::size_t cap);

} // namespace advstab
