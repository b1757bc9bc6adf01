#pragma once
#include <stdexcept>
#include <string>

namespace duffing {

/// Input outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// An iterative solver failed to reach its tolerance.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// No admissible root exists for the requested parameters.
struct NoRootError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A time integration failed; `time` is where it happened.
struct IntegrationError : std::runtime_error {
    double time;
    IntegrationError(const std::string& what, double t)
        : std::runtime_error(what), time(t) {}
};

/// A deviation series has no usable exponential regime.
struct NoExponentialRegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A series is too short for the requested analysis.
struct InsufficientLengthError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace duffing
