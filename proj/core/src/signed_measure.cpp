#include "advstab/signed_measure.hpp"

#include <cmath>
#include <map>

namespace advstab {

double SignedMeasurePair::positive_mass() const {
    double s = 0.0;
    for (const auto& p : positive) s += p.w;
    return s;
}

double SignedMeasurePair::negative_mass() const {
    double s = 0.0;
    for (const auto& p : negative) s += p.w;
    return s;
}

SignedMeasurePair signed_split(const ScalarField& theta, double threshold) {
    const Grid& g = theta.grid();
    const double l1 = lq_norm(theta, 1.0);
    if (std::abs(theta.mass()) > 1e-10 * std::max(l1, 1e-300))
        throw MassMismatch("signed_split: field has nonzero total mass");

    if (threshold < 0.0) threshold = 1e-13 * theta.max_abs();

    SignedMeasurePair pair;
    const double mu = g.cell_measure();
    const int n = g.n();
    const int ny = g.dim() == 2 ? n : 1;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < n; ++i) {
            const double v = theta[g.dim() == 2 ? g.index(i, j) : i];
            if (std::abs(v) <= threshold) continue;
            WeightedPoint p;
            p.x = {g.center(i), g.dim() == 2 ? g.center(j) : 0.0};
            p.w = std::abs(v) * mu;
            (v > 0.0 ? pair.positive : pair.negative).push_back(p);
        }

    const double mp = pair.positive_mass();
    const double mn = pair.negative_mass();
    if (pair.positive.empty() || pair.negative.empty()) {
        // a zero-mass field with one side empty is identically ~0
        pair.positive.clear();
        pair.negative.clear();
        return pair;
    }
    if (mp != mn) {
        auto& lighter = mp < mn ? pair.positive : pair.negative;
        const double factor = std::max(mp, mn) / std::min(mp, mn);
        for (auto& p : lighter) p.w *= factor;
        pair.rebalance_factor = factor;
    }
    return pair;
}

namespace {

std::vector<WeightedPoint> aggregate_side(const std::vector<WeightedPoint>& pts,
                                          const Grid& g, int block) {
    const double bh = block * g.spacing();
    std::map<std::pair<long, long>, std::array<double, 3>> acc; // wsum, wx, wy
    for (const auto& p : pts) {
        long bx = static_cast<long>(std::floor(p.x[0] / bh));
        long by = static_cast<long>(std::floor(p.x[1] / bh));
        auto& a = acc[{bx, by}];
        a[0] += p.w;
        a[1] += p.w * p.x[0];
        a[2] += p.w * p.x[1];
    }
    std::vector<WeightedPoint> out;
    out.reserve(acc.size());
    for (const auto& [key, a] : acc) {
        WeightedPoint p;
        p.w = a[0];
        p.x = {a[1] / a[0], a[2] / a[0]};
        out.push_back(p);
    }
    return out;
}

} // namespace

SignedMeasurePair block_aggregate(const SignedMeasurePair& pair, const Grid& grid, int block) {
    if (block <= 1) return pair;
    SignedMeasurePair out;
    out.positive = aggregate_side(pair.positive, grid, block);
    out.negative = aggregate_side(pair.negative, grid, block);
    out.rebalance_factor = pair.rebalance_factor;
    out.aggregation_block = pair.aggregation_block * block;
    return out;
}

int aggregation_block_for_cap(const SignedMeasurePair& pair, std::size_t cap) {
    // Block-aggregation by b reduces the support size by at most b^2 in 2D;
    // the actual count depends on the geometry, so callers re-check.
    int block = 1;
    std::size_t size = pair.support_size();
    while (size > cap && block < 1024) {
        block *= 2;
        size = (size + 3) / 4;
    }
    return block;
}

} // namespace advstab
