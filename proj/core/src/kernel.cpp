#include "advstab/kernel.hpp"

#include <cmath>
#include <numbers>

#include "advstab/fft.hpp"

namespace advstab {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

/// One-ring periodized log streamfunction kernel, tabulated at node-minus-
/// center displacements (di - 1/2, dj - 1/2) h. Row-major n-by-n table
/// indexed by the (wrapped) integer offset.
std::vector<double> streamfunction_table(const Grid& g) {
    const int n = g.n();
    const double h = g.spacing();
    const double L = g.length();
    std::vector<double> tab(static_cast<std::size_t>(n) * n);
    for (int dj = 0; dj < n; ++dj)
        for (int di = 0; di < n; ++di) {
            // principal offset in (-n/2, n/2]
            int px = di <= n / 2 ? di : di - n;
            int py = dj <= n / 2 ? dj : dj - n;
            double zx = (px - 0.5) * h;
            double zy = (py - 0.5) * h;
            double s = 0.0;
            for (int sy = -1; sy <= 1; ++sy)
                for (int sx = -1; sx <= 1; ++sx) {
                    double rx = zx + sx * L;
                    double ry = zy + sy * L;
                    s += -std::log(std::sqrt(rx * rx + ry * ry)) / two_pi;
                }
            tab[static_cast<std::size_t>(dj) * n + di] = s;
        }
    return tab;
}

VectorField biot_savart(const ScalarField& omega, ConvolveMethod method) {
    const Grid& g = omega.grid();
    if (g.dim() != 2)
        throw DimensionMismatch("kernel_convolve: biot_savart_2d requires a 2D grid");
    const int n = g.n();
    const double h = g.spacing();
    const std::size_t m = static_cast<std::size_t>(n) * n;

    std::vector<double> tab = streamfunction_table(g);

    // psi at node (i,j) = sum over cells of tab[(i-ic, j-jc)] w_c h^2
    std::vector<double> psi(m, 0.0);
    bool use_fft = method == ConvolveMethod::fft ||
                   (method == ConvolveMethod::automatic && n > 64);
    if (use_fft) {
        psi = circular_convolve_2d(tab, omega.values(), n);
        for (double& v : psi) v *= g.cell_measure();
    } else {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double s = 0.0;
                for (int jc = 0; jc < n; ++jc) {
                    const int dj = g.wrap(j - jc);
                    const double* trow = tab.data() + static_cast<std::size_t>(dj) * n;
                    const double* wrow = omega.values().data() + static_cast<std::size_t>(jc) * n;
                    for (int ic = 0; ic < n; ++ic)
                        s += trow[g.wrap(i - ic)] * wrow[ic];
                }
                psi[static_cast<std::size_t>(j) * n + i] = s * g.cell_measure();
            }
    }

    auto psi_at = [&](int i, int j) {
        return psi[static_cast<std::size_t>(g.index(i, j))];
    };

    VectorField u(g);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            u.face(0, i, j) = (psi_at(i, j + 1) - psi_at(i, j)) / h;
            u.face(1, i, j) = -(psi_at(i + 1, j) - psi_at(i, j)) / h;
        }
    return u;
}

/// Face-sampled component tables for a custom radial kernel.
std::vector<double> radial_component_table(const Grid& g,
                                           const std::function<double(double)>& profile,
                                           int axis) {
    const int n = g.n();
    const double h = g.spacing();
    const double L = g.length();
    // Face of axis 0 sits at (0, h/2) relative to a cell center, face of
    // axis 1 at (h/2, 0).
    const double offx = axis == 0 ? -0.5 * h : 0.0;
    const double offy = axis == 0 ? 0.0 : -0.5 * h;
    std::vector<double> tab(static_cast<std::size_t>(n) * (g.dim() == 2 ? n : 1), 0.0);
    const int ny = g.dim() == 2 ? n : 1;
    for (int dj = 0; dj < ny; ++dj)
        for (int di = 0; di < n; ++di) {
            int px = di <= n / 2 ? di : di - n;
            int py = dj <= n / 2 ? dj : dj - n;
            double s = 0.0;
            for (int sy = (g.dim() == 2 ? -1 : 0); sy <= (g.dim() == 2 ? 1 : 0); ++sy)
                for (int sx = -1; sx <= 1; ++sx) {
                    double zx = px * h + offx + sx * L;
                    double zy = py * h + offy + sy * L;
                    double r = std::sqrt(zx * zx + zy * zy);
                    if (r < 1e-14) continue; // k(0) := 0
                    double e = axis == 0 ? -zy / r : zx / r; // z_perp / |z|
                    s += profile(r) * e;
                }
            tab[static_cast<std::size_t>(dj) * n + di] = s;
        }
    return tab;
}

VectorField custom_radial(const KernelSpec& kernel, const ScalarField& omega,
                          ConvolveMethod method) {
    if (!kernel.profile) throw InvalidParameter("kernel_convolve: missing radial profile");
    const Grid& g = omega.grid();
    if (g.dim() != 2)
        throw DimensionMismatch("kernel_convolve: custom_radial requires a 2D grid");
    const int n = g.n();
    VectorField u(g);
    bool use_fft = method == ConvolveMethod::fft ||
                   (method == ConvolveMethod::automatic && n > 64);
    for (int axis = 0; axis < 2; ++axis) {
        std::vector<double> tab = radial_component_table(g, kernel.profile, axis);
        if (use_fft) {
            std::vector<double> conv = circular_convolve_2d(tab, omega.values(), n);
            for (std::size_t i = 0; i < conv.size(); ++i)
                u.comp(axis)[i] = conv[i] * g.cell_measure();
        } else {
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    double s = 0.0;
                    for (int jc = 0; jc < n; ++jc) {
                        const int dj = g.wrap(j - jc);
                        const double* trow = tab.data() + static_cast<std::size_t>(dj) * n;
                        const double* wrow = omega.values().data() + static_cast<std::size_t>(jc) * n;
                        for (int ic = 0; ic < n; ++ic)
                            s += trow[g.wrap(i - ic)] * wrow[ic];
                    }
                    u.face(axis, i, j) = s * g.cell_measure();
                }
        }
    }
    return u;
}

} // namespace

VectorField kernel_convolve(const KernelSpec& kernel, const ScalarField& omega,
                            ConvolveMethod method) {
    switch (kernel.kind) {
    case KernelSpec::Kind::biot_savart_2d:
        return biot_savart(omega, method);
    case KernelSpec::Kind::custom_radial:
        return custom_radial(kernel, omega, method);
    }
    throw InvalidParameter("kernel_convolve: unknown kernel kind");
}

KernelAssumptionReport sample_kernel_assumptions(const KernelSpec& kernel, const Grid& grid) {
    if (grid.dim() != 2)
        throw DimensionMismatch("sample_kernel_assumptions: 2D grids only");
    const double h = grid.spacing();
    const double L = grid.length();

    auto k_at = [&](double zx, double zy) -> std::array<double, 2> {
        double r = std::sqrt(zx * zx + zy * zy);
        if (r < 1e-14) return {0.0, 0.0};
        if (kernel.kind == KernelSpec::Kind::biot_savart_2d)
            return {-zy / (two_pi * r * r), zx / (two_pi * r * r)};
        double p = kernel.profile(r);
        return {-p * zy / r, p * zx / r};
    };

    KernelAssumptionReport rep;
    // growth constant sup |k(z)| |z|^(d-1) over the sampled range
    for (double r = h; r <= 0.45 * L; r *= 1.3) {
        auto k = k_at(r, 0.0);
        double mag = std::sqrt(k[0] * k[0] + k[1] * k[1]);
        rep.growth_constant = std::max(rep.growth_constant, mag * r);
    }

    // annular averages of grad k over log-spaced (R1, R2) pairs, via
    // midpoint quadrature of centered differences on a polar lattice
    std::vector<double> radii;
    for (double r = 2.0 * h; r <= 0.4 * L; r *= 1.6) radii.push_back(r);
    const double dq = h;
    for (std::size_t a = 0; a < radii.size(); ++a)
        for (std::size_t b = a + 1; b < radii.size(); ++b) {
            double acc[4] = {0.0, 0.0, 0.0, 0.0};
            for (double r = radii[a]; r < radii[b]; r += dq) {
                int nphi = std::max(16, static_cast<int>(two_pi * r / dq));
                double dphi = two_pi / nphi;
                for (int q = 0; q < nphi; ++q) {
                    double phi = (q + 0.5) * dphi;
                    double zx = r * std::cos(phi);
                    double zy = r * std::sin(phi);
                    double area = r * dq * dphi;
                    auto kxp = k_at(zx + 0.5 * dq, zy);
                    auto kxm = k_at(zx - 0.5 * dq, zy);
                    auto kyp = k_at(zx, zy + 0.5 * dq);
                    auto kym = k_at(zx, zy - 0.5 * dq);
                    acc[0] += (kxp[0] - kxm[0]) / dq * area;
                    acc[1] += (kyp[0] - kym[0]) / dq * area;
                    acc[2] += (kxp[1] - kxm[1]) / dq * area;
                    acc[3] += (kyp[1] - kym[1]) / dq * area;
                }
            }
            for (double v : acc) rep.annulus_gradient_max = std::max(rep.annulus_gradient_max, std::abs(v));
            ++rep.pairs_sampled;
        }
    return rep;
}

} // namespace advstab
