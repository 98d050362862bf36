#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace glvnet {

/// Base class for failures of the numerical model itself (as opposed to
/// malformed arguments, which throw std::invalid_argument).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A Cholesky pivot was non-positive.
class NotPositiveDefinite : public DomainError {
public:
    explicit NotPositiveDefinite(const std::string& what) : DomainError(what) {}
};

/// The interior equilibrium was requested beyond the loss of negative
/// definiteness of M. Carries the offending largest eigenvalue of M.
class PastPitchfork : public DomainError {
public:
    PastPitchfork(const std::string& what, double lambda_max)
        : DomainError(what), lambda_max_(lambda_max) {}
    double lambda_max() const noexcept { return lambda_max_; }

private:
    double lambda_max_;
};

/// A rejection sampler ran out of attempts.
class ResampleCapExceeded : public DomainError {
public:
    ResampleCapExceeded(const std::string& what, std::size_t attempts)
        : DomainError(what + " (gave up after " + std::to_string(attempts) + " attempts)"),
          attempts_(attempts) {}
    std::size_t attempts() const noexcept { return attempts_; }

private:
    std::size_t attempts_;
};

/// Closed form and bisection disagree on a bound cubic.
class BoundDisagreement : public DomainError {
public:
    using DomainError::DomainError;
};

/// A series or iteration did not converge.
class ConvergenceError : public DomainError {
public:
    using DomainError::DomainError;
};

/// The adaptive integrator could not take a step.
class StepSizeUnderflow : public DomainError {
public:
    StepSizeUnderflow(const std::string& what, double time)
        : DomainError(what + " at t=" + std::to_string(time)), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

}  // namespace glvnet
