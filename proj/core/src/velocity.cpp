#include "advstab/velocity.hpp"

#include <cmath>
#include <numbers>

namespace advstab {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

/// C^1 cutoff: 1 for t <= 0, 0 for t >= 1, smoothstep in between.
double taper(double t) {
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    return 1.0 - t * t * (3.0 - 2.0 * t);
}

} // namespace

VectorField generate_field(const FieldFamilySpec& spec, const Grid& grid) {
    const double L = grid.length();
    const double h = grid.spacing();

    switch (spec.kind) {
    case FieldFamilySpec::Kind::uniform:
        return VectorField::from_function(
            grid, [&](double, double) { return spec.amplitude; },
            [](double, double) { return 0.0; });

    case FieldFamilySpec::Kind::shear:
        if (grid.dim() != 2)
            throw DimensionMismatch("generate_field: shear requires a 2D grid");
        return VectorField::from_function(
            grid,
            [&](double, double y) { return spec.amplitude * std::sin(two_pi * y / L); },
            [](double, double) { return 0.0; });

    case FieldFamilySpec::Kind::oscillatory: {
        if (spec.mode < 1) throw InvalidParameter("generate_field: mode must be >= 1");
        if (L / spec.mode < 4.0 * h)
            throw ResolutionError("generate_field: oscillation wavelength below 4h");
        const double k = two_pi * spec.mode / L;
        if (grid.dim() == 1)
            return VectorField::from_function(
                grid,
                [&](double x, double) { return spec.amplitude * std::sin(k * x + spec.phase); },
                [](double, double) { return 0.0; });
        return VectorField::from_function(
            grid,
            [&](double, double y) { return spec.amplitude * std::sin(k * y + spec.phase); },
            [](double, double) { return 0.0; });
    }

    case FieldFamilySpec::Kind::rotation: {
        if (grid.dim() != 2)
            throw DimensionMismatch("generate_field: rotation requires a 2D grid");
        const double r0 = spec.radius > 0.0 ? spec.radius : 0.25 * L;
        const double r1 = 1.4 * r0;
        auto weight = [&](double x, double y) {
            double dx = x - spec.center[0];
            double dy = y - spec.center[1];
            double r = std::sqrt(dx * dx + dy * dy);
            return taper((r - r0) / (r1 - r0));
        };
        return VectorField::from_function(
            grid,
            [&](double x, double y) {
                return -spec.amplitude * (y - spec.center[1]) * weight(x, y);
            },
            [&](double x, double y) {
                return spec.amplitude * (x - spec.center[0]) * weight(x, y);
            });
    }

    case FieldFamilySpec::Kind::vortex_patch: {
        if (grid.dim() != 2)
            throw DimensionMismatch("generate_field: vortex_patch requires a 2D grid");
        const double r0 = spec.radius;
        if (!(r0 > 0.0)) throw InvalidParameter("generate_field: vortex_patch radius must be > 0");
        const double rt0 = 0.35 * L;
        const double rt1 = 0.45 * L;
        auto speed = [&](double r) {
            double s = (r <= r0) ? spec.circulation * r / (two_pi * r0 * r0)
                                 : spec.circulation / (two_pi * r);
            return s * taper((r - rt0) / (rt1 - rt0));
        };
        auto ux = [&](double x, double y) {
            double dx = x - spec.center[0];
            double dy = y - spec.center[1];
            double r = std::sqrt(dx * dx + dy * dy);
            if (r < 1e-14) return 0.0;
            return -speed(r) * dy / r;
        };
        auto uy = [&](double x, double y) {
            double dx = x - spec.center[0];
            double dy = y - spec.center[1];
            double r = std::sqrt(dx * dx + dy * dy);
            if (r < 1e-14) return 0.0;
            return speed(r) * dx / r;
        };
        return VectorField::from_function(grid, ux, uy);
    }

    case FieldFamilySpec::Kind::custom:
        if (!spec.custom_ux) throw InvalidParameter("generate_field: custom_ux missing");
        return VectorField::from_function(
            grid, spec.custom_ux,
            spec.custom_uy ? spec.custom_uy : [](double, double) { return 0.0; });
    }
    throw InvalidParameter("generate_field: unknown kind");
}

ScalarField face_divergence(const VectorField& u) {
    const Grid& g = u.grid();
    const int n = g.n();
    const double inv_h = 1.0 / g.spacing();
    ScalarField div(g);
    if (g.dim() == 1) {
        for (int i = 0; i < n; ++i) div[i] = (u.face(0, i + 1) - u.face(0, i)) * inv_h;
    } else {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                div.at(i, j) = (u.face(0, i + 1, j) - u.face(0, i, j)
                                + u.face(1, i, j + 1) - u.face(1, i, j)) * inv_h;
    }
    return div;
}

FieldNorms field_norms(const VectorField& u, double p) {
    if (!(p >= 1.0)) throw InvalidParameter("field_norms: p must be >= 1");
    const Grid& g = u.grid();
    const int n = g.n();
    const double inv_2h = 0.5 / g.spacing();

    FieldNorms out;

    // Gradient tensor via centered differences of each component on its own
    // face lattice, collected into a pointwise Frobenius magnitude.
    ScalarField gmag(g);
    if (g.dim() == 1) {
        for (int i = 0; i < n; ++i) {
            double d = (u.face(0, i + 1) - u.face(0, i - 1)) * inv_2h;
            gmag[i] = std::abs(d);
        }
    } else {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double gxx = (u.face(0, i + 1, j) - u.face(0, i - 1, j)) * inv_2h;
                double gxy = (u.face(0, i, j + 1) - u.face(0, i, j - 1)) * inv_2h;
                double gyx = (u.face(1, i + 1, j) - u.face(1, i - 1, j)) * inv_2h;
                double gyy = (u.face(1, i, j + 1) - u.face(1, i, j - 1)) * inv_2h;
                gmag.at(i, j) = std::sqrt(gxx * gxx + gxy * gxy + gyx * gyx + gyy * gyy);
            }
    }
    out.w1p_seminorm = lq_norm(gmag, p);

    // |u| at cell centers by averaging the two faces of each axis.
    ScalarField umag(g);
    if (g.dim() == 1) {
        for (int i = 0; i < n; ++i)
            umag[i] = std::abs(0.5 * (u.face(0, i) + u.face(0, i + 1)));
    } else {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double cx = 0.5 * (u.face(0, i, j) + u.face(0, i + 1, j));
                double cy = 0.5 * (u.face(1, i, j) + u.face(1, i, j + 1));
                umag.at(i, j) = std::sqrt(cx * cx + cy * cy);
            }
    }
    out.lp_norm = lq_norm(umag, p);
    out.weak_lp = weak_lp_quasinorm(umag, p);

    ScalarField div = face_divergence(u);
    double nds = 0.0;
    for (double v : div.values()) nds = std::max(nds, std::max(0.0, -v));
    out.neg_div_sup = nds;
    return out;
}

VelocitySequence VelocitySequence::steady(VectorField u, double t_final) {
    VelocitySequence seq;
    seq.frames.push_back(std::move(u));
    seq.t_final = t_final;
    return seq;
}

const VectorField& VelocitySequence::at_time(double t) const {
    if (frames.size() == 1) return frames.front();
    const double dt = frame_dt();
    auto k = static_cast<std::size_t>(std::max(0.0, t / dt));
    if (k >= frames.size()) k = frames.size() - 1;
    return frames[k];
}

double l1_lp_distance(const VelocitySequence& u1, const VelocitySequence& u2, double p) {
    const std::size_t m = std::max(u1.frames.size(), u2.frames.size());
    const double t_final = u1.t_final;
    const double dt = t_final / static_cast<double>(m);
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double t = static_cast<double>(k) * dt;
        VectorField diff = u1.at_time(t);
        diff -= u2.at_time(t);
        acc += field_norms(diff, p).lp_norm * dt;
    }
    return acc;
}

double l1_linf_gradient(const VelocitySequence& u) {
    const double dt = u.frame_dt();
    double acc = 0.0;
    for (const VectorField& frame : u.frames) {
        const Grid& g = frame.grid();
        const int nn = g.n();
        const double inv_2h = 0.5 / g.spacing();
        double gmax = 0.0;
        if (g.dim() == 1) {
            for (int i = 0; i < nn; ++i)
                gmax = std::max(gmax, std::abs((frame.face(0, i + 1) - frame.face(0, i - 1)) * inv_2h));
        } else {
            for (int j = 0; j < nn; ++j)
                for (int i = 0; i < nn; ++i) {
                    double gxx = (frame.face(0, i + 1, j) - frame.face(0, i - 1, j)) * inv_2h;
                    double gxy = (frame.face(0, i, j + 1) - frame.face(0, i, j - 1)) * inv_2h;
                    double gyx = (frame.face(1, i + 1, j) - frame.face(1, i - 1, j)) * inv_2h;
                    double gyy = (frame.face(1, i, j + 1) - frame.face(1, i, j - 1)) * inv_2h;
                    gmax = std::max({gmax, std::abs(gxx), std::abs(gxy), std::abs(gyx), std::abs(gyy)});
                }
        }
        acc += gmax * dt;
    }
    return acc;
}

} // namespace advstab
