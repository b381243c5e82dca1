#include "advstab/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace advstab {

ScalarField ScalarField::from_function(const Grid& grid,
                                       const std::function<double(double, double)>& f) {
    ScalarField out(grid);
    const int n = grid.n();
    if (grid.dim() == 1) {
        for (int i = 0; i < n; ++i) out[i] = f(grid.center(i), 0.0);
    } else {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                out[grid.index(i, j)] = f(grid.center(i), grid.center(j));
    }
    return out;
}

double ScalarField::mass() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s * grid_.cell_measure();
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool ScalarField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](double v) { return std::isfinite(v); });
}

ScalarField ScalarField::shift_cells(int sx, int sy) const {
    ScalarField out(grid_);
    const int n = grid_.n();
    if (grid_.dim() == 1) {
        for (int i = 0; i < n; ++i) out.at(i + sx) = values_[static_cast<std::size_t>(i)];
    } else {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                out.at(i + sx, j + sy) = values_[static_cast<std::size_t>(grid_.index(i, j))];
    }
    return out;
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
    if (!grid_.same_as(other.grid_)) throw DimensionMismatch("ScalarField: grid mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
    if (!grid_.same_as(other.grid_)) throw DimensionMismatch("ScalarField: grid mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

ScalarField& ScalarField::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

VectorField::VectorField(const Grid& grid, double fill) : grid_(grid) {
    const std::size_t m = static_cast<std::size_t>(grid.cell_count());
    for (int a = 0; a < grid.dim(); ++a) comp_[a].assign(m, fill);
}

VectorField VectorField::from_function(const Grid& grid,
                                       const std::function<double(double, double)>& ux,
                                       const std::function<double(double, double)>& uy) {
    VectorField out(grid);
    const int n = grid.n();
    const double h = grid.spacing();
    if (grid.dim() == 1) {
        for (int i = 0; i < n; ++i) out.face(0, i) = ux(i * h, 0.0);
    } else {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                out.face(0, i, j) = ux(i * h, grid.center(j));
                out.face(1, i, j) = uy(grid.center(i), j * h);
            }
    }
    return out;
}

double VectorField::max_abs() const {
    double m = 0.0;
    for (int a = 0; a < grid_.dim(); ++a) m = std::max(m, max_abs_comp(a));
    return m;
}

double VectorField::max_abs_comp(int axis) const {
    double m = 0.0;
    for (double v : comp_[axis]) m = std::max(m, std::abs(v));
    return m;
}

bool VectorField::all_finite() const {
    for (int a = 0; a < grid_.dim(); ++a)
        if (!std::all_of(comp_[a].begin(), comp_[a].end(),
                         [](double v) { return std::isfinite(v); }))
            return false;
    return true;
}

VectorField& VectorField::operator+=(const VectorField& other) {
    if (!grid_.same_as(other.grid_)) throw DimensionMismatch("VectorField: grid mismatch");
    for (int a = 0; a < grid_.dim(); ++a)
        for (std::size_t i = 0; i < comp_[a].size(); ++i) comp_[a][i] += other.comp_[a][i];
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
    if (!grid_.same_as(other.grid_)) throw DimensionMismatch("VectorField: grid mismatch");
    for (int a = 0; a < grid_.dim(); ++a)
        for (std::size_t i = 0; i < comp_[a].size(); ++i) comp_[a][i] -= other.comp_[a][i];
    return *this;
}

VectorField& VectorField::operator*=(double s) {
    for (int a = 0; a < grid_.dim(); ++a)
        for (double& v : comp_[a]) v *= s;
    return *this;
}

// --- norms ------------------------------------------------------------------

double lq_norm(const ScalarField& f, double q) {
    if (std::isinf(q)) return f.max_abs();
    if (!(q >= 1.0)) throw InvalidParameter("lq_norm: q must be >= 1");
    double s = 0.0;
    if (q == 1.0) {
        for (double v : f.values()) s += std::abs(v);
    } else if (q == 2.0) {
        for (double v : f.values()) s += v * v;
    } else {
        for (double v : f.values()) s += std::pow(std::abs(v), q);
    }
    return std::pow(f.grid().cell_measure() * s, 1.0 / q);
}

double weak_lp_quasinorm(const ScalarField& f, double p) {
    if (!(p >= 1.0)) throw InvalidParameter("weak_lp_quasinorm: p must be >= 1");
    std::vector<double> mags(f.values().size());
    for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = std::abs(f.values()[i]);
    std::sort(mags.begin(), mags.end(), std::greater<double>());
    const double mu = f.grid().cell_measure();
    double best = 0.0;
    // After descending sort, mu{|f| >= mags[k]} >= (k+1) cells; using exactly
    // (k+1) at each k realizes the sup over the observed levels.
    for (std::size_t k = 0; k < mags.size(); ++k) {
        if (mags[k] == 0.0) break;
        double cand = mags[k] * std::pow(mu * static_cast<double>(k + 1), 1.0 / p);
        best = std::max(best, cand);
    }
    return best;
}

// --- stencils ---------------------------------------------------------------

ScalarField laplacian(const ScalarField& f) {
    const Grid& g = f.grid();
    const int n = g.n();
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    ScalarField out(g);
    if (g.dim() == 1) {
        for (int i = 0; i < n; ++i) {
            const double c = f[i];
            out[i] = (f.at(i + 1) - 2.0 * c + f.at(i - 1)) * inv_h2;
        }
    } else {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const double c = f.at(i, j);
                out.at(i, j) = (f.at(i + 1, j) - 2.0 * c + f.at(i - 1, j)
                                + f.at(i, j + 1) - 2.0 * c + f.at(i, j - 1)) * inv_h2;
            }
    }
    return out;
}

ScalarField upwind_divergence(const VectorField& u, const ScalarField& f) {
    const Grid& g = f.grid();
    if (!g.same_as(u.grid())) throw DimensionMismatch("upwind_divergence: grid mismatch");
    const int n = g.n();
    const double inv_h = 1.0 / g.spacing();
    ScalarField out(g);

    auto flux1 = [&](double vel, double left, double right) {
        return vel >= 0.0 ? vel * left : vel * right;
    };

    if (g.dim() == 1) {
        std::vector<double> flux(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            flux[static_cast<std::size_t>(i)] = flux1(u.face(0, i), f.at(i - 1), f.at(i));
        for (int i = 0; i < n; ++i) {
            const double fr = flux[static_cast<std::size_t>(g.wrap(i + 1))];
            out[i] = (fr - flux[static_cast<std::size_t>(i)]) * inv_h;
        }
    } else {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const double fxl = flux1(u.face(0, i, j), f.at(i - 1, j), f.at(i, j));
                const double fxr = flux1(u.face(0, i + 1, j), f.at(i, j), f.at(i + 1, j));
                const double fyl = flux1(u.face(1, i, j), f.at(i, j - 1), f.at(i, j));
                const double fyr = flux1(u.face(1, i, j + 1), f.at(i, j), f.at(i, j + 1));
                out.at(i, j) = (fxr - fxl + fyr - fyl) * inv_h;
            }
    }
    return out;
}

ScalarField centered_derivative(const ScalarField& f, int axis) {
    const Grid& g = f.grid();
    if (axis < 0 || axis >= g.dim())
        throw InvalidParameter("centered_derivative: axis out of range");
    const int n = g.n();
    const double inv_2h = 0.5 / g.spacing();
    ScalarField out(g);
    if (g.dim() == 1) {
        for (int i = 0; i < n; ++i) out[i] = (f.at(i + 1) - f.at(i - 1)) * inv_2h;
    } else if (axis == 0) {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                out.at(i, j) = (f.at(i + 1, j) - f.at(i - 1, j)) * inv_2h;
    } else {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                out.at(i, j) = (f.at(i, j + 1) - f.at(i, j - 1)) * inv_2h;
    }
    return out;
}

// --- maximal function -------------------------------------------------------

std::vector<double> dyadic_radii(const Grid& grid) {
    std::vector<double> radii;
    for (double r = grid.spacing(); r <= 0.5 * grid.length() + 1e-12 * grid.length(); r *= 2.0)
        radii.push_back(r);
    return radii;
}

ScalarField maximal_function(const ScalarField& f, const std::vector<double>& radii) {
    const Grid& g = f.grid();
    if (radii.empty()) throw InvalidParameter("maximal_function: radii must be non-empty");
    for (double r : radii)
        if (r < g.spacing()) throw InvalidParameter("maximal_function: radius below grid spacing");

    const int n = g.n();
    const double h = g.spacing();

    // The sup over R > 0 includes balls smaller than one cell, whose average
    // is the cell value itself; seed the max with |f| so Mf >= |f| holds
    // pointwise as in the continuum.
    ScalarField out(g, 0.0);
    for (std::int64_t i = 0; i < out.size(); ++i) out[i] = std::abs(f[i]);

    // Offsets are reused across all cells: a ball is a fixed stencil on a
    // uniform periodic grid. Ties at the boundary radius are included.
    // The offset range (-n/2, n/2] enumerates each periodic image once.
    const int lo = -n / 2 + 1;
    const int hi = n / 2;
    for (double r : radii) {
        const int reach = static_cast<int>(std::floor(r / h)) + 1;
        const int olo = std::max(lo, -reach);
        const int ohi = std::min(hi, reach);
        std::vector<std::array<int, 2>> offsets;
        if (g.dim() == 1) {
            for (int dx = olo; dx <= ohi; ++dx) {
                double d = std::abs(g.wrap_delta(dx * h));
                if (d <= r + 1e-12 * h) offsets.push_back({dx, 0});
            }
        } else {
            for (int dy = olo; dy <= ohi; ++dy)
                for (int dx = olo; dx <= ohi; ++dx) {
                    double ddx = g.wrap_delta(dx * h);
                    double ddy = g.wrap_delta(dy * h);
                    if (std::sqrt(ddx * ddx + ddy * ddy) <= r + 1e-12 * h)
                        offsets.push_back({dx, dy});
                }
        }
        const double inv_count = 1.0 / static_cast<double>(offsets.size());
        if (g.dim() == 1) {
            for (int i = 0; i < n; ++i) {
                double s = 0.0;
                for (const auto& o : offsets) s += std::abs(f.at(i + o[0]));
                out[i] = std::max(out[i], s * inv_count);
            }
        } else {
            for (int j = 0; j < n; ++j)
                for (int i = 0; i < n; ++i) {
                    double s = 0.0;
                    for (const auto& o : offsets) s += std::abs(f.at(i + o[0], j + o[1]));
                    out.at(i, j) = std::max(out.at(i, j), s * inv_count);
                }
        }
    }
    return out;
}

// --- mollification ----------------------------------------------------------

ScalarField mollify(const ScalarField& f, double eps) {
    const Grid& g = f.grid();
    if (eps < g.spacing()) throw InvalidParameter("mollify: eps must be >= grid spacing");

    const double h = g.spacing();
    const int reach = static_cast<int>(std::floor(eps / h));
    const int olo = std::max(-g.n() / 2 + 1, -reach);
    const int ohi = std::min(g.n() / 2, reach);

    // Standard compactly supported bump exp(-1/(1-(r/eps)^2)), sampled at
    // cell centers and renormalized to unit discrete mass.
    std::vector<std::array<int, 2>> offsets;
    std::vector<double> weights;
    double wsum = 0.0;
    auto bump = [&](double r) {
        double t = r / eps;
        if (t >= 1.0) return 0.0;
        return std::exp(-1.0 / (1.0 - t * t));
    };
    if (g.dim() == 1) {
        for (int dx = olo; dx <= ohi; ++dx) {
            double w = bump(std::abs(dx * h));
            if (w > 0.0) {
                offsets.push_back({dx, 0});
                weights.push_back(w);
                wsum += w;
            }
        }
    } else {
        for (int dy = olo; dy <= ohi; ++dy)
            for (int dx = olo; dx <= ohi; ++dx) {
                double w = bump(std::sqrt(double(dx) * dx + double(dy) * dy) * h);
                if (w > 0.0) {
                    offsets.push_back({dx, dy});
                    weights.push_back(w);
                    wsum += w;
                }
            }
    }
    for (double& w : weights) w /= wsum;

    const int n = g.n();
    ScalarField out(g);
    if (g.dim() == 1) {
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k < offsets.size(); ++k)
                s += weights[k] * f.at(i - offsets[k][0]);
            out[i] = s;
        }
    } else {
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double s = 0.0;
                for (std::size_t k = 0; k < offsets.size(); ++k)
                    s += weights[k] * f.at(i - offsets[k][0], j - offsets[k][1]);
                out.at(i, j) = s;
            }
    }
    return out;
}

} // namespace advstab
