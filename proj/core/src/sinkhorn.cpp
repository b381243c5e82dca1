#include "advstab/sinkhorn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace advstab {

namespace {

/// Raw <pi, C> and marginal violation of the log-domain plan
/// pi_ij = a_i b_j exp((f_i + g_j - C_ij)/reg).
struct PlanStats {
    double transport_cost = 0.0;
    double violation = 0.0;
};

class LogSinkhorn {
public:
    LogSinkhorn(const std::vector<double>& a, const std::vector<double>& b,
                std::vector<double> cost_matrix, double reg)
        : a_(a), b_(b), c_(std::move(cost_matrix)), reg_(reg), m_(a.size()), n_(b.size()),
          f_(m_, 0.0), g_(n_, 0.0) {
        la_.resize(m_);
        lb_.resize(n_);
        for (std::size_t i = 0; i < m_; ++i) la_[i] = std::log(a_[i]);
        for (std::size_t j = 0; j < n_; ++j) lb_[j] = std::log(b_[j]);
    }

    void iterate() {
        // f_i <- -reg LSE_j((g_j - C_ij)/reg + log b_j), then symmetrically.
        for (std::size_t i = 0; i < m_; ++i) {
            double mx = -std::numeric_limits<double>::infinity();
            const double* row = c_.data() + i * n_;
            for (std::size_t j = 0; j < n_; ++j)
                mx = std::max(mx, (g_[j] - row[j]) / reg_ + lb_[j]);
            double s = 0.0;
            for (std::size_t j = 0; j < n_; ++j)
                s += std::exp((g_[j] - row[j]) / reg_ + lb_[j] - mx);
            f_[i] = -reg_ * (mx + std::log(s));
        }
        for (std::size_t j = 0; j < n_; ++j) {
            double mx = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i)
                mx = std::max(mx, (f_[i] - c_[i * n_ + j]) / reg_ + la_[i]);
            double s = 0.0;
            for (std::size_t i = 0; i < m_; ++i)
                s += std::exp((f_[i] - c_[i * n_ + j]) / reg_ + la_[i] - mx);
            g_[j] = -reg_ * (mx + std::log(s));
        }
    }

    PlanStats stats() const {
        PlanStats st;
        std::vector<double> row_sum(m_, 0.0), col_sum(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            const double* row = c_.data() + i * n_;
            for (std::size_t j = 0; j < n_; ++j) {
                double p = std::exp((f_[i] + g_[j] - row[j]) / reg_ + la_[i] + lb_[j]);
                st.transport_cost += p * row[j];
                row_sum[i] += p;
                col_sum[j] += p;
            }
        }
        double viol = 0.0;
        for (std::size_t i = 0; i < m_; ++i) viol += std::abs(row_sum[i] - a_[i]);
        for (std::size_t j = 0; j < n_; ++j) viol += std::abs(col_sum[j] - b_[j]);
        st.violation = viol;
        return st;
    }

    const std::vector<double>& f() const { return f_; }
    const std::vector<double>& g() const { return g_; }

private:
    const std::vector<double>& a_;
    const std::vector<double>& b_;
    std::vector<double> c_;
    double reg_;
    std::size_t m_, n_;
    std::vector<double> f_, g_, la_, lb_;
};

std::vector<double> cost_matrix(const OtInstance& inst, const CostFunction& cost) {
    const std::size_t m = inst.a.size();
    const std::size_t n = inst.b.size();
    std::vector<double> c(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) c[i * n + j] = cost(inst.dist(i, j));
    return c;
}

double converge(LogSinkhorn& s, int max_iter, double tol_abs, PlanStats& out) {
    for (int it = 1; it <= max_iter; ++it) {
        s.iterate();
        if (it % 16 == 0 || it == max_iter) {
            out = s.stats();
            if (out.violation <= tol_abs) return it;
        }
    }
    throw NoConvergence("sinkhorn_ot: marginal violation above tolerance after max_iter",
                        out.violation);
}

/// Self-transport value OT_reg(w, w) on one cloud, for debiasing. The
/// alternating iteration oscillates on symmetric problems, so this uses the
/// damped symmetric update f <- (f + T f)/2 with a single potential.
double self_value(const std::vector<std::array<double, 2>>& pts, const std::vector<double>& w,
                  const OtInstance& proto, const CostFunction& cost, double reg, int max_iter,
                  double tol_abs) {
    OtInstance self;
    self.src = pts;
    self.tgt = pts;
    self.a = w;
    self.b = w;
    self.dim = proto.dim;
    self.length = proto.length;
    const std::size_t n = w.size();
    std::vector<double> c = cost_matrix(self, cost);
    std::vector<double> lw(n), f(n, 0.0), fnew(n);
    for (std::size_t i = 0; i < n; ++i) lw[i] = std::log(w[i]);

    double viol = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= max_iter; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double mx = -std::numeric_limits<double>::infinity();
            const double* row = c.data() + i * n;
            for (std::size_t j = 0; j < n; ++j)
                mx = std::max(mx, (f[j] - row[j]) / reg + lw[j]);
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                s += std::exp((f[j] - row[j]) / reg + lw[j] - mx);
            fnew[i] = -reg * (mx + std::log(s));
        }
        for (std::size_t i = 0; i < n; ++i) f[i] = 0.5 * (f[i] + fnew[i]);

        if (it % 16 == 0 || it == max_iter) {
            std::vector<double> row_sum(n, 0.0);
            double transport = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double* row = c.data() + i * n;
                for (std::size_t j = 0; j < n; ++j) {
                    double p = std::exp((f[i] + f[j] - row[j]) / reg + lw[i] + lw[j]);
                    row_sum[i] += p;
                    transport += p * row[j];
                }
            }
            viol = 0.0;
            for (std::size_t i = 0; i < n; ++i) viol += std::abs(row_sum[i] - w[i]);
            if (2.0 * viol <= tol_abs) return transport;
        }
    }
    throw NoConvergence("sinkhorn_ot: self-transport debiasing did not converge", viol);
}

} // namespace

SinkhornResult sinkhorn_ot(const OtInstance& instance, const CostFunction& cost, double reg,
                           int max_iter, double tol) {
    if (!(reg > 0.0)) throw InvalidParameter("sinkhorn_ot: reg must be > 0");
    SinkhornResult res;
    const std::size_t m = instance.a.size();
    const std::size_t n = instance.b.size();
    if (m == 0 && n == 0) return res;
    if (m == 0 || n == 0) throw MassMismatch("sinkhorn_ot: one side of the pair is empty");

    double total_mass = 0.0;
    for (double v : instance.a) total_mass += v;
    const double tol_abs = tol * std::max(total_mass, 1e-300);

    LogSinkhorn s(instance.a, instance.b, cost_matrix(instance, cost), reg);
    PlanStats st;
    res.iterations = static_cast<int>(converge(s, max_iter, tol_abs, st));
    res.value = st.transport_cost;
    res.marginal_violation = st.violation;
    res.f = s.f();
    res.g = s.g();

    const double self_a =
        self_value(instance.src, instance.a, instance, cost, reg, max_iter, tol_abs);
    const double self_b =
        self_value(instance.tgt, instance.b, instance, cost, reg, max_iter, tol_abs);
    res.debiased_value = res.value - 0.5 * (self_a + self_b);
    return res;
}

} // namespace advstab
