// errors.hpp — exception types shared by all cgsme modules

#pragma once

#include <stdexcept>
#include <string>

namespace cgsme {

// Base class so callers can catch any library failure in one clause.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

// Result would exceed double range.
struct OverflowError : Error {
    using Error::Error;
};

// An iterative/adaptive scheme failed to reach its tolerance.
struct ConvergenceError : Error {
    using Error::Error;
};

// Off-diagonal rate formula requested at (near-)coincident frequencies.
struct DegenerateFrequencies : Error {
    using Error::Error;
};

// Integration step too large for the requested dynamics.
struct StepSizeError : Error {
    using Error::Error;
};

// Amplitude norm left the physical sector during an exact solve.
struct NonUnitaryError : Error {
    using Error::Error;
};

// Generic numerical failure (non-finite values, failed factorization, ...).
struct NumericalError : Error {
    using Error::Error;
};

// Two trajectories do not share a time grid / picture.
struct GridMismatch : Error {
    using Error::Error;
};

// Picture transform applied in the wrong direction.
struct PictureError : Error {
    using Error::Error;
};

// Optimizer minimum landed on the edge of its search window.
struct BoundaryError : Error {
    using Error::Error;
};

// Invalid run configuration; message names the offending field.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace cgsme
