#include "advstab/transport.hpp"

#include <cmath>

namespace advstab {

namespace {

DistanceResult solve_pair(const SignedMeasurePair& pair_in, const Grid& grid,
                          const CostFunction& cost, const DistanceOptions& options,
                          double threshold_used) {
    DistanceResult res;
    res.provenance.method = options.method == OtMethod::exact ? "exact" : "sinkhorn";
    res.provenance.cost_kind = cost.name();
    res.provenance.delta = cost.kind == CostFunction::Kind::log_delta ? cost.delta : 0.0;
    res.provenance.reg = options.method == OtMethod::sinkhorn ? options.reg : 0.0;
    res.provenance.split_threshold = threshold_used;
    res.provenance.support_cap = options.support_cap;

    SignedMeasurePair pair = pair_in;
    if (pair.empty()) {
        res.provenance.support_size = 0;
        return res;
    }

    if (options.method == OtMethod::exact && options.allow_aggregation) {
        int block = 1;
        while (pair.support_size() > options.support_cap && block < 4096) {
            block *= 2;
            pair = block_aggregate(pair_in, grid, block);
        }
    }
    res.provenance.rebalance_factor = pair.rebalance_factor;
    res.provenance.aggregation_block = pair.aggregation_block;
    res.provenance.support_size = pair.support_size();

    OtInstance inst = OtInstance::from_pair(pair, grid);
    if (options.method == OtMethod::exact) {
        res.exact = exact_ot(inst, cost, options.support_cap);
        res.value = res.exact->value;
    } else {
        res.entropic = sinkhorn_ot(inst, cost, options.reg, options.max_iter,
                                   res.provenance.sinkhorn_marginal_tol);
        res.value = res.entropic->value;
    }
    return res;
}

} // namespace

DistanceResult distance_zero_mass(const ScalarField& theta, const CostFunction& cost,
                                  const DistanceOptions& options) {
    const double thr = options.threshold < 0.0 ? 1e-13 * theta.max_abs() : options.threshold;
    SignedMeasurePair pair = signed_split(theta, thr);
    return solve_pair(pair, theta.grid(), cost, options, thr);
}

DistanceResult distance(const ScalarField& theta1, const ScalarField& theta2,
                        const CostFunction& cost, const DistanceOptions& options) {
    if (!theta1.grid().same_as(theta2.grid()))
        throw DimensionMismatch("distance: fields live on different grids");
    const double m1 = theta1.mass();
    const double m2 = theta2.mass();
    const double scale = std::max({std::abs(m1), std::abs(m2), lq_norm(theta1, 1.0)});
    if (std::abs(m1 - m2) > 1e-10 * std::max(scale, 1e-300))
        throw MassMismatch("distance: masses differ beyond 1e-10 relative");
    ScalarField diff = theta1;
    diff -= theta2;
    return distance_zero_mass(diff, cost, options);
}

double w1_1d_oracle(const ScalarField& mu, const ScalarField& nu) {
    const Grid& g = mu.grid();
    if (g.dim() != 1 || nu.grid().dim() != 1)
        throw DimensionMismatch("w1_1d_oracle: 1D fields only");
    if (!g.same_as(nu.grid())) throw DimensionMismatch("w1_1d_oracle: grid mismatch");
    const double m1 = mu.mass();
    const double m2 = nu.mass();
    const double scale = std::max({std::abs(m1), std::abs(m2), lq_norm(mu, 1.0), 1e-300});
    if (std::abs(m1 - m2) > 1e-10 * scale)
        throw MassMismatch("w1_1d_oracle: masses differ");

    const double h = g.spacing();
    double cum = 0.0;
    double w1 = 0.0;
    for (int i = 0; i < g.n(); ++i) {
        cum += (mu[i] - nu[i]) * h;
        w1 += std::abs(cum) * h;
    }
    return w1;
}

BoundOtdReport bound_otd_check(const ScalarField& theta, double gamma, double delta,
                               const DistanceOptions& options) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw InvalidParameter("bound_otd_check: gamma must be in (0,1)");
    if (!(delta > 0.0)) throw InvalidParameter("bound_otd_check: delta must be > 0");

    BoundOtdReport rep;
    rep.l1 = lq_norm(theta, 1.0);
    rep.d_bounded = distance_zero_mass(theta, CostFunction::tanh_bounded(), options).value;
    rep.d_delta = distance_zero_mass(theta, CostFunction::log_delta(delta), options).value;
    rep.lhs = rep.d_bounded;
    rep.rhs = rep.d_delta / std::log(1.0 / gamma) + (delta / gamma) * rep.l1;
    rep.slack = rep.rhs - rep.lhs;
    rep.holds = rep.slack >= -1e-12 * (1.0 + std::abs(rep.rhs));
    return rep;
}

ScalarField extend_potential_to_grid(const Grid& grid, const OtInstance& instance,
                                     const CostFunction& cost, const DualPotential& potential) {
    ScalarField zeta(grid);
    const int n = grid.n();
    const int ny = grid.dim() == 2 ? n : 1;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < n; ++i) {
            std::array<double, 2> z = {grid.center(i), grid.dim() == 2 ? grid.center(j) : 0.0};
            zeta[grid.dim() == 2 ? grid.index(i, j) : i] =
                c_transform_at(instance, cost, potential, z);
        }
    return zeta;
}

DtdReport dtD_check(const TrajectoryWindow& theta1, const TrajectoryWindow& theta2,
                    const VectorField& u1, const VectorField& u2, double kappa1, double kappa2,
                    double dt_fd, const CostFunction& cost, const DistanceOptions& options) {
    if (options.method != OtMethod::exact)
        throw InvalidParameter("dtD_check: requires the exact method (dual potential needed)");
    const Grid& g = theta1.at.grid();

    DtdReport rep;
    const double d_before = distance(theta1.before, theta2.before, cost, options).value;
    const double d_after = distance(theta1.after, theta2.after, cost, options).value;
    rep.fd_derivative = (d_after - d_before) / (2.0 * dt_fd);

    DistanceResult at_t = distance(theta1.at, theta2.at, cost, options);
    rep.distance_at_t = at_t.value;
    if (!at_t.exact) {
        // identical snapshots: derivative is zero by convention
        rep.formula_value = 0.0;
        rep.relative_gap = std::abs(rep.fd_derivative);
        return rep;
    }

    ScalarField diff = theta1.at;
    diff -= theta2.at;
    SignedMeasurePair pair = signed_split(diff, options.threshold < 0.0
                                                    ? 1e-13 * diff.max_abs()
                                                    : options.threshold);
    OtInstance inst = OtInstance::from_pair(pair, g);
    ScalarField zeta = extend_potential_to_grid(g, inst, cost, at_t.exact->potential);
    ScalarField zx = centered_derivative(zeta, 0);
    std::optional<ScalarField> zy;
    if (g.dim() == 2) zy = centered_derivative(zeta, 1);

    ScalarField t1x = centered_derivative(theta1.at, 0);
    ScalarField t2x = centered_derivative(theta2.at, 0);
    std::optional<ScalarField> t1y, t2y;
    if (g.dim() == 2) {
        t1y = centered_derivative(theta1.at, 1);
        t2y = centered_derivative(theta2.at, 1);
    }

    const int n = g.n();
    const int nyv = g.dim() == 2 ? n : 1;
    double adv = 0.0, dif = 0.0;
    for (int j = 0; j < nyv; ++j)
        for (int i = 0; i < n; ++i) {
            const std::int64_t idx = g.dim() == 2 ? g.index(i, j) : i;
            const double u1x = 0.5 * (u1.face(0, i, j) + u1.face(0, i + 1, j));
            const double u2x = 0.5 * (u2.face(0, i, j) + u2.face(0, i + 1, j));
            double a = zx[idx] * (u1x * theta1.at[idx] - u2x * theta2.at[idx]);
            double d = zx[idx] * (kappa1 * t1x[idx] - kappa2 * t2x[idx]);
            if (g.dim() == 2) {
                const double u1y = 0.5 * (u1.face(1, i, j) + u1.face(1, i, j + 1));
                const double u2y = 0.5 * (u2.face(1, i, j) + u2.face(1, i, j + 1));
                a += (*zy)[idx] * (u1y * theta1.at[idx] - u2y * theta2.at[idx]);
                d += (*zy)[idx] * (kappa1 * (*t1y)[idx] - kappa2 * (*t2y)[idx]);
            }
            adv += a;
            dif += d;
        }
    rep.advective_term = adv * g.cell_measure();
    rep.diffusive_term = dif * g.cell_measure();
    rep.formula_value = rep.advective_term - rep.diffusive_term;

    const double denom = std::max({std::abs(rep.fd_derivative), std::abs(rep.formula_value), 1e-300});
    rep.relative_gap = std::abs(rep.fd_derivative - rep.formula_value) / denom;
    return rep;
}

} // namespace advstab
