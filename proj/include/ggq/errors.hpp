#pragma once

#include <stdexcept>
#include <string>

namespace ggq {

/// Base class for all computational failures raised by this library.
/// Input-validation problems use std::invalid_argument instead.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A pivot vanished to machine precision during elimination.
struct SingularSystemError : Error {
    using Error::Error;
};

/// Newton failed to reduce the residual within the iteration budget,
/// or could not maintain the point ordering. Callers shrink the
/// continuation step and retry.
struct NewtonDivergenceError : Error {
    using Error::Error;
};

/// Numerical moment integration did not reach the requested tolerance
/// within the subdivision budget.
struct QuadratureError : Error {
    using Error::Error;
};

/// Fatal continuation failure. Carries the diagnostic state at the
/// point of failure so the CLI can report it.
struct ContinuationError : Error {
    ContinuationError(const std::string& msg, double xi, char phase, double residual)
        : Error(msg), xi(xi), phase(phase), residual(residual) {}
    double xi = 0.0;
    char phase = '?';
    double residual = 0.0;
};

} // namespace ggq
