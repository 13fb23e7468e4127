#pragma once

#include <stdexcept>
#include <string>

namespace nls2d {

// Error families map onto CLI exit codes: validation 2, numerical 3, I/O 4.

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Nodal data does not have the symmetry the requested sector demands.
struct SectorMismatchError : ValidationError {
    using ValidationError::ValidationError;
};

// Grid too small to represent the requested truncation.
struct ResolutionError : ValidationError {
    using ValidationError::ValidationError;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoConvergenceError : NumericalError {
    double last_residual = 0.0;
    NoConvergenceError(const std::string& msg, double r) : NumericalError(msg), last_residual(r) {}
};

struct ContinuationBreakdownError : NumericalError {
    using NumericalError::NumericalError;
};

// Right-hand side has a component in the kernel of the operator being inverted.
struct SolvabilityError : NumericalError {
    double kernel_projection = 0.0;
    SolvabilityError(const std::string& msg, double proj)
        : NumericalError(msg), kernel_projection(proj) {}
};

struct NumericRangeError : NumericalError {
    using NumericalError::NumericalError;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace nls2d
