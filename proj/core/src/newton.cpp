#include "slag/newton.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

namespace slag {

namespace {

double maxNorm(const Eigen::VectorXd& v) {
    if (!v.allFinite()) return std::numeric_limits<double>::infinity();
    return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

}  // namespace

double NewtonTrace::bestResidual() const {
    return residualNorms.empty() ? std::numeric_limits<double>::infinity()
                                 : *std::min_element(residualNorms.begin(), residualNorms.end());
}

NewtonTrace damped_newton(const ResidualFn& residual, Eigen::VectorXd x0, const NewtonOptions& opts) {
    NewtonTrace trace;
    Eigen::VectorXd x = std::move(x0);
    Eigen::VectorXd r = residual(x);
    double norm = maxNorm(r);
    trace.residualNorms.push_back(norm);
    const Eigen::Index n = x.size();

    while (norm > opts.tolerance && trace.iterations < opts.maxIterations) {
        Eigen::MatrixXd jac(r.size(), n);
        for (Eigen::Index j = 0; j < n; ++j) {
            Eigen::VectorXd xp = x, xm = x;
            xp(j) += opts.fdStep;
            xm(j) -= opts.fdStep;
            jac.col(j) = (residual(xp) - residual(xm)) / (2.0 * opts.fdStep);
        }
        const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(-r);
        if (!step.allFinite()) break;

        double lambda = 1.0;
        bool accepted = false;
        for (int h = 0; h <= opts.maxHalvings; ++h, lambda *= 0.5) {
            const Eigen::VectorXd trial = x + lambda * step;
            Eigen::VectorXd rt;
            try {
                rt = residual(trial);
            } catch (const std::exception&) {
                continue;
            }
            const double nt = maxNorm(rt);
            if (nt < norm) {
                x = trial;
                r = rt;
                norm = nt;
                accepted = true;
                break;
            }
        }
        ++trace.iterations;
        trace.residualNorms.push_back(norm);
        if (!accepted) break;
    }
    trace.solution = x;
    trace.converged = norm <= opts.tolerance;
    return trace;
}

}  // namespace slag
