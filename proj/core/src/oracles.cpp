#include "advstab/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace advstab {

namespace {

/// Solve the flows of a candidate basis by peeling degree-one nodes.
/// Returns false if the basis is not a spanning tree or a flow is negative.
bool solve_basis(const std::vector<std::pair<int, int>>& cells, std::vector<double> supply,
                 std::vector<double> demand, double& cost_out,
                 const std::vector<std::vector<double>>& c) {
    const int m = static_cast<int>(supply.size());
    const int n = static_cast<int>(demand.size());
    std::vector<char> used(cells.size(), 0);
    std::vector<int> deg_row(m, 0), deg_col(n, 0);
    for (const auto& [i, j] : cells) {
        ++deg_row[i];
        ++deg_col[j];
    }

    cost_out = 0.0;
    std::size_t solved = 0;
    while (solved < cells.size()) {
        bool progress = false;
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (used[k]) continue;
            const auto [i, j] = cells[k];
            double flow;
            if (deg_row[i] == 1) {
                flow = supply[i];
            } else if (deg_col[j] == 1) {
                flow = demand[j];
            } else {
                continue;
            }
            if (flow < -1e-12) return false;
            supply[i] -= flow;
            demand[j] -= flow;
            --deg_row[i];
            --deg_col[j];
            used[k] = 1;
            ++solved;
            cost_out += flow * c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            progress = true;
        }
        if (!progress) return false; // cycle: not a tree
    }
    // all supplies and demands must be exhausted
    for (double s : supply)
        if (std::abs(s) > 1e-9) return false;
    for (double d : demand)
        if (std::abs(d) > 1e-9) return false;
    return true;
}

} // namespace

double ot_value_by_vertex_enumeration(const OtInstance& instance, const CostFunction& cost) {
    const int m = static_cast<int>(instance.a.size());
    const int n = static_cast<int>(instance.b.size());
    if (m == 0 || n == 0) return 0.0;
    if (m * n > 25)
        throw InvalidParameter("ot_value_by_vertex_enumeration: instance too large");

    std::vector<std::vector<double>> c(static_cast<std::size_t>(m),
                                       std::vector<double>(static_cast<std::size_t>(n)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                cost(instance.dist(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));

    const int cells_total = m * n;
    const int basis_size = m + n - 1;
    std::vector<int> pick(static_cast<std::size_t>(basis_size));
    for (int k = 0; k < basis_size; ++k) pick[static_cast<std::size_t>(k)] = k;

    double best = std::numeric_limits<double>::infinity();
    while (true) {
        std::vector<std::pair<int, int>> cells;
        cells.reserve(static_cast<std::size_t>(basis_size));
        for (int idx : pick) cells.emplace_back(idx / n, idx % n);
        double value = 0.0;
        if (solve_basis(cells, instance.a, instance.b, value, c)) best = std::min(best, value);

        // next combination
        int pos = basis_size - 1;
        while (pos >= 0 &&
               pick[static_cast<std::size_t>(pos)] == cells_total - basis_size + pos)
            --pos;
        if (pos < 0) break;
        ++pick[static_cast<std::size_t>(pos)];
        for (int q = pos + 1; q < basis_size; ++q)
            pick[static_cast<std::size_t>(q)] = pick[static_cast<std::size_t>(q - 1)] + 1;
    }
    return best;
}

} // namespace advstab
