#pragma once

#include <stdexcept>
#include <string>

namespace advstab {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A parameter is outside its admissible range (q < 1, eps < h, ...).
struct InvalidParameter : Error {
    using Error::Error;
};

/// Two objects live on incompatible grids or dimensions.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// Total masses of a pair do not agree within tolerance.
struct MassMismatch : Error {
    using Error::Error;
};

/// Transport instance exceeds the exact-solver support cap.
struct SupportCapExceeded : Error {
    using Error::Error;
};

/// A fixed time step violates the stability (CFL) bound.
struct CflViolation : Error {
    using Error::Error;
};

/// The time integration produced non-finite values.
struct SolverDivergence : Error {
    using Error::Error;
};

/// An iterative method did not reach its tolerance within the budget.
struct NoConvergence : Error {
    double residual = 0.0;
    NoConvergence(const std::string& what, double res)
        : Error(what), residual(res) {}
};

/// A requested oscillation is too fine for the grid.
struct ResolutionError : Error {
    using Error::Error;
};

} // namespace advstab
