#pragma once

#include <stdexcept>
#include <string>

namespace slag {

/// Thrown when an argument violates an operation's stated precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown by iterative solvers and quadrature that fail to meet tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double bestResidual)
        : std::runtime_error(what), bestResidual_(bestResidual) {}
    double bestResidual() const noexcept { return bestResidual_; }

private:
    double bestResidual_;
};

/// Thrown when a geometric object is degenerate (rank loss, branch cut, non-transverse pair).
class GeometryError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace slag
