#pragma once

#include "advstab/exact_ot.hpp"

namespace advstab {

/// Brute-force transportation optimum by enumerating every basic feasible
/// solution (spanning-tree bases of the bipartite graph). Exponential in the
/// instance size; intended for instances with at most ~4x4 support as an
/// independent cross-check of the simplex solver.
double ot_value_by_vertex_enumeration(const OtInstance& instance, const CostFunction& cost);

} // namespace advstab
