#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace slag {

struct OdeOptions {
    double rtol = 1e-12;
    double atol = 1e-14;
    double initialStep = 0.0;  // 0 selects an automatic first step
    long maxSteps = 2000000;
};

using OdeRhs = std::function<void(double t, const Eigen::VectorXd& y, Eigen::VectorXd& dydt)>;

struct OdeTrajectory {
    std::vector<double> t;
    std::vector<Eigen::VectorXd> y;
    long rejected = 0;
};

/// Adaptive Dormand-Prince 5(4) from t0 to t1 (t1 > t0). Every accepted step is recorded.
OdeTrajectory dormand_prince(const OdeRhs& f, double t0, const Eigen::VectorXd& y0, double t1,
                             const OdeOptions& opts = {});

/// Same integrator, returning only the state at t1.
Eigen::VectorXd dormand_prince_to(const OdeRhs& f, double t0, const Eigen::VectorXd& y0, double t1,
                                  const OdeOptions& opts = {});

}  // namespace slag
