#pragma once

#include <functional>

#include <Eigen/Dense>

namespace slag {

struct QuadratureOptions {
    double absTol = 1e-15;
    double relTol = 1e-13;
    int maxIntervals = 4000;
};

struct QuadratureResult {
    Eigen::VectorXd value;
    Eigen::VectorXd error;
    int intervals = 0;
};

/// Writes the integrand vector at x into `out` (already sized).
using VectorIntegrand = std::function<void(double x, Eigen::Ref<Eigen::VectorXd> out)>;

/// Globally adaptive Gauss-Kronrod 7/15 for a vector-valued integrand. Every
/// component must satisfy error <= max(absTol, relTol*|value|); throws
/// ConvergenceError otherwise.
QuadratureResult gauss_kronrod(const VectorIntegrand& f, int dim, double a, double b,
                               const QuadratureOptions& opts = {});

double gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                     const QuadratureOptions& opts = {});

}  // namespace slag
