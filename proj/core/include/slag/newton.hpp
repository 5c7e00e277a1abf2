#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "slag/quadrature.hpp"

namespace slag {

struct NewtonOptions {
    int maxIterations = 30;
    double tolerance = 1e-11;  // on the max-norm of the residual
    double fdStep = 1e-6;      // central differences in the unknowns
    int maxHalvings = 40;
};

struct NewtonTrace {
    Eigen::VectorXd solution;
    std::vector<double> residualNorms;  // entry 0 is the initial residual
    int iterations = 0;
    bool converged = false;
    double bestResidual() const;
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Damped Newton with a central finite-difference Jacobian; the step is halved
/// until the residual norm decreases.
NewtonTrace damped_newton(const ResidualFn& residual, Eigen::VectorXd x0, const NewtonOptions& opts = {});

/// Options shared by the neck inversions (unknowns are log a_k).
struct InversionOptions {
    NewtonOptions newton;
    QuadratureOptions quad{0.0, 1e-13, 4000};
    std::vector<double> initialGuess;  // a_k; empty selects the built-in heuristic
};

}  // namespace slag
