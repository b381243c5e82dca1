#include "advstab/exact_ot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace advstab {

OtInstance OtInstance::from_pair(const SignedMeasurePair& pair, const Grid& grid) {
    OtInstance inst;
    inst.dim = grid.dim();
    inst.length = grid.length();
    inst.src.reserve(pair.positive.size());
    inst.a.reserve(pair.positive.size());
    for (const auto& p : pair.positive) {
        inst.src.push_back(p.x);
        inst.a.push_back(p.w);
    }
    inst.tgt.reserve(pair.negative.size());
    inst.b.reserve(pair.negative.size());
    for (const auto& p : pair.negative) {
        inst.tgt.push_back(p.x);
        inst.b.push_back(p.w);
    }
    return inst;
}

double OtInstance::dist(std::size_t i, std::size_t j) const {
    double dx = src[i][0] - tgt[j][0];
    double dy = dim == 2 ? src[i][1] - tgt[j][1] : 0.0;
    if (length > 0.0) {
        dx -= length * std::round(dx / length);
        dy -= length * std::round(dy / length);
    }
    return std::sqrt(dx * dx + dy * dy);
}

namespace {

/// Network simplex on the bipartite transportation graph augmented with an
/// artificial root. Node ids: sources 0..m-1, targets m..m+n-1, root m+n.
/// Real arcs are implicit (id = i*n + j, oriented source -> target);
/// artificial arcs connect every node with the root at big-M cost and form
/// the initial spanning tree.
class TransportSimplex {
public:
    TransportSimplex(const OtInstance& inst, const CostFunction& cost)
        : inst_(inst), cost_(cost),
          m_(inst.a.size()), n_(inst.b.size()), root_(m_ + n_) {}

    void run();

    double flow_cost() const;
    TransportPlan plan() const;
    /// LP dual potentials: alpha on sources, beta on targets, with
    /// alpha_i + beta_j <= c_ij (up to the pivot tolerance).
    void duals(std::vector<double>& alpha, std::vector<double>& beta) const;
    long pivots() const { return pivots_; }
    double arc_cost(std::size_t i, std::size_t j) const {
        if (!cost_cache_.empty()) return cost_cache_[i * n_ + j];
        return cost_(inst_.dist(i, j));
    }

private:
    struct BasicArc {
        int u = -1; // tail (source or root), per stored orientation
        int v = -1; // head
        double flow = 0.0;
        double cost = 0.0;
    };

    const OtInstance& inst_;
    const CostFunction& cost_;
    std::size_t m_, n_;
    int root_;

    std::vector<double> cost_cache_;
    double big_m_ = 0.0;
    double tol_ = 0.0;

    std::vector<BasicArc> basic_;           // basic arcs (tree edges)
    std::vector<std::vector<int>> adj_;     // node -> incident basic arc ids
    std::vector<int> parent_;               // tree parent node
    std::vector<int> parent_arc_;           // basic arc id to parent
    std::vector<int> depth_;
    std::vector<double> pot_;               // node potentials
    long pivots_ = 0;

    void build_initial_tree();
    void rebuild_tree_arrays();
    bool pivot(std::size_t enter_i, std::size_t enter_j, double enter_cost);
    void remove_adj(int node, int arc);
};

void TransportSimplex::build_initial_tree() {
    double cmax = 0.0;
    const bool cache = m_ * n_ <= (std::size_t{1} << 23);
    if (cache) cost_cache_.resize(m_ * n_);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            double c = cost_(inst_.dist(i, j));
            if (cache) cost_cache_[i * n_ + j] = c;
            cmax = std::max(cmax, c);
        }
    big_m_ = (static_cast<double>(m_ + n_) + 2.0) * (cmax + 1.0);
    tol_ = 1e-12 * (cmax + 1.0);

    basic_.clear();
    basic_.reserve(m_ + n_ + 64);
    adj_.assign(m_ + n_ + 1, {});
    for (std::size_t i = 0; i < m_; ++i) {
        BasicArc arc{static_cast<int>(i), root_, inst_.a[i], big_m_};
        adj_[i].push_back(static_cast<int>(basic_.size()));
        adj_[static_cast<std::size_t>(root_)].push_back(static_cast<int>(basic_.size()));
        basic_.push_back(arc);
    }
    for (std::size_t j = 0; j < n_; ++j) {
        BasicArc arc{root_, static_cast<int>(m_ + j), inst_.b[j], big_m_};
        adj_[m_ + j].push_back(static_cast<int>(basic_.size()));
        adj_[static_cast<std::size_t>(root_)].push_back(static_cast<int>(basic_.size()));
        basic_.push_back(arc);
    }
    rebuild_tree_arrays();
}

void TransportSimplex::rebuild_tree_arrays() {
    const std::size_t nn = m_ + n_ + 1;
    parent_.assign(nn, -1);
    parent_arc_.assign(nn, -1);
    depth_.assign(nn, 0);
    pot_.assign(nn, 0.0);

    // BFS from the root; reduced cost of a basic arc (u -> v) vanishes:
    // cost - pot[u] + pot[v] = 0.
    std::vector<int> stack = {root_};
    std::vector<char> seen(nn, 0);
    seen[static_cast<std::size_t>(root_)] = 1;
    parent_[static_cast<std::size_t>(root_)] = root_;
    while (!stack.empty()) {
        int node = stack.back();
        stack.pop_back();
        for (int aid : adj_[static_cast<std::size_t>(node)]) {
            const BasicArc& arc = basic_[static_cast<std::size_t>(aid)];
            int other = arc.u == node ? arc.v : arc.u;
            if (seen[static_cast<std::size_t>(other)]) continue;
            seen[static_cast<std::size_t>(other)] = 1;
            parent_[static_cast<std::size_t>(other)] = node;
            parent_arc_[static_cast<std::size_t>(other)] = aid;
            depth_[static_cast<std::size_t>(other)] = depth_[static_cast<std::size_t>(node)] + 1;
            if (arc.u == other) // arc other -> node
                pot_[static_cast<std::size_t>(other)] = arc.cost + pot_[static_cast<std::size_t>(node)];
            else                // arc node -> other
                pot_[static_cast<std::size_t>(other)] = pot_[static_cast<std::size_t>(node)] - arc.cost;
            stack.push_back(other);
        }
    }
}

void TransportSimplex::remove_adj(int node, int arc) {
    auto& lst = adj_[static_cast<std::size_t>(node)];
    lst.erase(std::find(lst.begin(), lst.end(), arc));
}

bool TransportSimplex::pivot(std::size_t enter_i, std::size_t enter_j, double enter_cost) {
    const int ni = static_cast<int>(enter_i);
    const int nj = static_cast<int>(m_ + enter_j);

    // Collect the tree paths from both endpoints to their LCA.
    int a = ni, b = nj;
    std::vector<int> arcs_a, arcs_b; // parent arcs climbed from each side
    while (a != b) {
        if (depth_[static_cast<std::size_t>(a)] >= depth_[static_cast<std::size_t>(b)]) {
            arcs_a.push_back(parent_arc_[static_cast<std::size_t>(a)]);
            a = parent_[static_cast<std::size_t>(a)];
        } else {
            arcs_b.push_back(parent_arc_[static_cast<std::size_t>(b)]);
            b = parent_[static_cast<std::size_t>(b)];
        }
    }

    // Pushing t along enter_i -> enter_j, the cycle continues from nj up to
    // the LCA and back down to ni. Traversing an arc with the cycle
    // direction increases its flow, against decreases it.
    double t = std::numeric_limits<double>::infinity();
    int leave = -1;
    auto scan = [&](const std::vector<int>& arcs, int start, bool from_head) {
        // from_head: walking starts at the entering arc's head (nj) and moves
        // toward the LCA; otherwise we conceptually traverse from the LCA
        // down to the tail (ni), which reverses the direction of travel.
        int cur = start;
        for (int aid : arcs) {
            const BasicArc& arc = basic_[static_cast<std::size_t>(aid)];
            int par = arc.u == cur ? arc.v : arc.u;
            // direction of travel: from_head ? cur->par : par->cur
            bool along = from_head ? (arc.u == cur) : (arc.u == par);
            if (!along) { // flow decreases
                if (arc.flow < t - 1e-18) {
                    t = arc.flow;
                    leave = aid;
                }
            }
            cur = par;
        }
    };
    scan(arcs_b, nj, true);
    scan(arcs_a, ni, false);

    if (leave < 0) return false; // cannot happen on a balanced instance

    // Apply the flow change.
    auto apply = [&](const std::vector<int>& arcs, int start, bool from_head) {
        int cur = start;
        for (int aid : arcs) {
            BasicArc& arc = basic_[static_cast<std::size_t>(aid)];
            int par = arc.u == cur ? arc.v : arc.u;
            bool along = from_head ? (arc.u == cur) : (arc.u == par);
            arc.flow += along ? t : -t;
            cur = par;
        }
    };
    if (t > 0.0) {
        apply(arcs_b, nj, true);
        apply(arcs_a, ni, false);
    }

    // Swap leaving for entering in the basic set, reuse the slot.
    BasicArc& slot = basic_[static_cast<std::size_t>(leave)];
    remove_adj(slot.u, leave);
    remove_adj(slot.v, leave);
    slot = BasicArc{ni, nj, t, enter_cost};
    adj_[static_cast<std::size_t>(ni)].push_back(leave);
    adj_[static_cast<std::size_t>(nj)].push_back(leave);

    rebuild_tree_arrays();
    ++pivots_;
    return true;
}

void TransportSimplex::run() {
    if (m_ == 0 || n_ == 0) return;
    build_initial_tree();

    const std::size_t arc_count = m_ * n_;
    const std::size_t block =
        std::max<std::size_t>(64, static_cast<std::size_t>(std::sqrt(static_cast<double>(arc_count))));
    const long max_pivots = 64 * static_cast<long>(m_ + n_) + 65536;

    std::size_t cursor = 0;
    while (true) {
        double best_r = -tol_;
        std::size_t best_arc = arc_count;
        std::size_t scanned = 0;
        while (scanned < arc_count) {
            const std::size_t stop = std::min(cursor + block, arc_count);
            for (std::size_t aidx = cursor; aidx < stop; ++aidx) {
                const std::size_t i = aidx / n_;
                const std::size_t j = aidx % n_;
                const double c = arc_cost(i, j);
                const double r = c - pot_[i] + pot_[m_ + j];
                if (r < best_r) {
                    best_r = r;
                    best_arc = aidx;
                }
            }
            scanned += stop - cursor;
            cursor = stop == arc_count ? 0 : stop;
            if (best_arc != arc_count) break; // found a candidate in this block run
        }
        if (best_arc == arc_count) break; // a full clean pass: optimal

        const std::size_t i = best_arc / n_;
        const std::size_t j = best_arc % n_;
        if (!pivot(i, j, arc_cost(i, j)))
            throw NoConvergence("exact_ot: degenerate pivot failure", best_r);
        if (pivots_ > max_pivots)
            throw NoConvergence("exact_ot: pivot budget exceeded", best_r);
    }
}

double TransportSimplex::flow_cost() const {
    double s = 0.0;
    for (const BasicArc& arc : basic_)
        if (arc.u != root_ && arc.v != root_ && arc.flow != 0.0) s += arc.flow * arc.cost;
    return s;
}

TransportPlan TransportSimplex::plan() const {
    TransportPlan p;
    for (const BasicArc& arc : basic_) {
        if (arc.u == root_ || arc.v == root_ || arc.flow <= 0.0) continue;
        PlanEntry e;
        e.i = arc.u;
        e.j = static_cast<std::int32_t>(arc.v - static_cast<int>(m_));
        e.mass = arc.flow;
        p.entries.push_back(e);
    }
    std::sort(p.entries.begin(), p.entries.end(), [](const PlanEntry& x, const PlanEntry& y) {
        return x.i != y.i ? x.i < y.i : x.j < y.j;
    });
    return p;
}

void TransportSimplex::duals(std::vector<double>& alpha, std::vector<double>& beta) const {
    alpha.assign(m_, 0.0);
    beta.assign(n_, 0.0);
    // reduced cost of arc (i -> j): c - pot[i] + pot[m+j] >= 0, so the LP
    // duals are alpha_i = pot[i], beta_j = -pot[m+j].
    for (std::size_t i = 0; i < m_; ++i) alpha[i] = pot_[i];
    for (std::size_t j = 0; j < n_; ++j) beta[j] = -pot_[m_ + j];
}

} // namespace

double c_transform_at(const OtInstance& instance, const CostFunction& cost,
                      const DualPotential& potential, const std::array<double, 2>& z) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < instance.tgt.size(); ++j) {
        double dx = z[0] - instance.tgt[j][0];
        double dy = instance.dim == 2 ? z[1] - instance.tgt[j][1] : 0.0;
        if (instance.length > 0.0) {
            dx -= instance.length * std::round(dx / instance.length);
            dy -= instance.length * std::round(dy / instance.length);
        }
        double d = std::sqrt(dx * dx + dy * dy);
        best = std::min(best, potential.target_values[j] + cost(d));
    }
    return best;
}

ExactOtResult exact_ot(const OtInstance& instance, const CostFunction& cost,
                       std::size_t support_cap) {
    const std::size_t m = instance.a.size();
    const std::size_t n = instance.b.size();
    ExactOtResult res;
    if (m == 0 && n == 0) return res;
    if (m == 0 || n == 0)
        throw MassMismatch("exact_ot: one side of the pair is empty");
    if (m + n > support_cap)
        throw SupportCapExceeded(
            "exact_ot: support size " + std::to_string(m + n) + " exceeds cap " +
            std::to_string(support_cap) + "; aggregate the split or use sinkhorn_ot");

    double ma = 0.0, mb = 0.0;
    for (double v : instance.a) ma += v;
    for (double v : instance.b) mb += v;
    if (std::abs(ma - mb) > 1e-9 * std::max(ma, mb))
        throw MassMismatch("exact_ot: unbalanced pair");

    TransportSimplex simplex(instance, cost);
    simplex.run();

    res.value = simplex.flow_cost();
    res.plan = simplex.plan();
    res.pivots = simplex.pivots();

    // Kantorovich potential: one c-transform of the LP duals gives a
    // c-Lipschitz function that attains the same dual value.
    std::vector<double> alpha, beta;
    simplex.duals(alpha, beta);
    DualPotential raw;
    raw.target_values.resize(n);
    for (std::size_t j = 0; j < n; ++j) raw.target_values[j] = -beta[j];

    res.potential.source_values.resize(m);
    res.potential.target_values.resize(n);
    for (std::size_t i = 0; i < m; ++i)
        res.potential.source_values[i] = c_transform_at(instance, cost, raw, instance.src[i]);
    for (std::size_t j = 0; j < n; ++j)
        res.potential.target_values[j] = c_transform_at(instance, cost, raw, instance.tgt[j]);

    double dual = 0.0;
    for (std::size_t i = 0; i < m; ++i) dual += instance.a[i] * res.potential.source_values[i];
    for (std::size_t j = 0; j < n; ++j) dual -= instance.b[j] * res.potential.target_values[j];
    res.dual_value = dual;
    res.duality_gap = std::abs(res.value - res.dual_value);

    double feas = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double c = simplex.arc_cost(i, j);
            double diff = std::abs(res.potential.source_values[i] - res.potential.target_values[j]);
            feas = std::max(feas, diff - c);
        }
    res.feasibility_slack = feas;

    double cs = 0.0;
    for (const PlanEntry& e : res.plan.entries) {
        double c = simplex.arc_cost(static_cast<std::size_t>(e.i), static_cast<std::size_t>(e.j));
        double diff = res.potential.source_values[static_cast<std::size_t>(e.i)] -
                      res.potential.target_values[static_cast<std::size_t>(e.j)];
        cs = std::max(cs, std::abs(diff - c));
    }
    res.complementary_slackness = cs;
    return res;
}

} // namespace advstab
