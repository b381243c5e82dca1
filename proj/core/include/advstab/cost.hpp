#pragma once

#include <cmath>
#include <string>

#include "advstab/error.hpp"

namespace advstab {

/// Transport cost as a function of distance: z (Wasserstein-1),
/// log(z/delta + 1), or tanh(z). All three vanish at zero, are
/// non-decreasing, and the latter two are strictly concave, so each induces
/// a metric d(x,y) = c(|x-y|).
struct CostFunction {
    enum class Kind { w1, log_delta, tanh_bounded };

    Kind kind = Kind::w1;
    double delta = 1.0;

    static CostFunction w1() { return {Kind::w1, 1.0}; }
    static CostFunction log_delta(double delta) {
        if (!(delta > 0.0)) throw InvalidParameter("CostFunction: delta must be > 0");
        return {Kind::log_delta, delta};
    }
    static CostFunction tanh_bounded() { return {Kind::tanh_bounded, 1.0}; }

    double operator()(double z) const {
        switch (kind) {
        case Kind::w1: return z;
        case Kind::log_delta: return std::log1p(z / delta);
        case Kind::tanh_bounded: return std::tanh(z);
        }
        return 0.0;
    }

    double lipschitz_constant() const {
        return kind == Kind::log_delta ? 1.0 / delta : 1.0;
    }

    std::string name() const {
        switch (kind) {
        case Kind::w1: return "w1";
        case Kind::log_delta: return "log_delta";
        case Kind::tanh_bounded: return "tanh";
        }
        return "?";
    }
};

} // namespace advstab
