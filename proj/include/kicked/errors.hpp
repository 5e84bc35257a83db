// errors.hpp — Exception types shared by the kicked library

#pragma once

#include <stdexcept>
#include <string>

namespace kicked {

// Operator has the wrong dimension for the requested operation.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input violates a type invariant (Hermiticity, positivity, parameter range).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Bloch vector or density matrix outside the state space.
struct InvalidStateError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain (negative time etc).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Non-finite result or a numerical routine that failed to converge.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Explicit integrator step beyond its stability limit.
struct StabilityError : NumericError {
    using NumericError::NumericError;
};

// Tabulated spectral density queried outside its grid.
struct ExtrapolationError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Harmonic series could not be truncated to the requested tolerance.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Frame or physical regime that a routine does not cover.
struct UnsupportedError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// gamma(-w)/gamma(w) with gamma(w) == 0.
struct UndefinedRatioError : std::domain_error {
    using std::domain_error::domain_error;
};

// Measured data that no parameter value can explain.
struct InconsistentDataError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Root bracket does not contain a solution.
struct OutOfRangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

} // namespace kicked
