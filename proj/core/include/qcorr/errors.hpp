#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

/// Evaluation point outside the domain of a function (e.g. x outside [0, L]).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A configuration, scheme or superposition violates one of its invariants.
class ConfigurationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Quadrature did not reach a usable result. Carries the achieved error estimate.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, double estimate)
        : std::runtime_error(what), estimate_(estimate) {}

    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

/// An information measure came out negative beyond quadrature tolerance where
/// it must be non-negative.
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qcorr
