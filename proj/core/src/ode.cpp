#include "slag/ode.hpp"

#include <algorithm>
#include <cmath>

#include "slag/errors.hpp"

namespace slag {

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

double errorNorm(const Eigen::VectorXd& err, const Eigen::VectorXd& y0, const Eigen::VectorXd& y1,
                 const OdeOptions& o) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double sc = o.atol + o.rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
        s += (err(i) / sc) * (err(i) / sc);
    }
    return std::sqrt(s / static_cast<double>(err.size()));
}

template <class Record>
Eigen::VectorXd integrate(const OdeRhs& f, double t0, const Eigen::VectorXd& y0, double t1, const OdeOptions& o,
                          Record&& record) {
    if (!(t1 > t0)) {
        if (t1 == t0) return y0;
        throw PreconditionError("dormand_prince integrates forward only");
    }
    const Eigen::Index n = y0.size();
    Eigen::VectorXd y = y0, k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n);
    f(t0, y, k1);

    double h = o.initialStep;
    if (h <= 0.0) {
        // Hairer's starting-step heuristic.
        double d0 = 0.0, d1 = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double sc = o.atol + o.rtol * std::abs(y(i));
            d0 += (y(i) / sc) * (y(i) / sc);
            d1 += (k1(i) / sc) * (k1(i) / sc);
        }
        d0 = std::sqrt(d0 / n);
        d1 = std::sqrt(d1 / n);
        h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h = std::min(h, t1 - t0);
    }

    double t = t0;
    long steps = 0;
    long rejected = 0;
    while (t < t1) {
        if (++steps > o.maxSteps) throw ConvergenceError("Runge-Kutta step budget exhausted", t);
        const bool last = t + h >= t1;
        if (last) h = t1 - t;

        tmp = y + h * a21 * k1;
        f(t + c2 * h, tmp, k2);
        tmp = y + h * (a31 * k1 + a32 * k2);
        f(t + c3 * h, tmp, k3);
        tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        f(t + c4 * h, tmp, k4);
        tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        f(t + c5 * h, tmp, k5);
        tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        f(t + h, tmp, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        f(t + h, ynew, k7);
        const Eigen::VectorXd err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double en = errorNorm(err, y, ynew, o);

        if (en <= 1.0 && ynew.allFinite()) {
            t = last ? t1 : t + h;
            y = ynew;
            k1 = k7;
            record(t, y);
            const double fac = en == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(en, -0.2)));
            h *= fac;
        } else {
            ++rejected;
            const double fac = std::isfinite(en) ? std::max(0.1, 0.9 * std::pow(en, -0.25)) : 0.1;
            h *= fac;
            if (h < 1e-15 * std::max(1.0, std::abs(t))) throw ConvergenceError("Runge-Kutta step size underflow", t);
        }
    }
    (void)rejected;
    return y;
}

}  // namespace

OdeTrajectory dormand_prince(const OdeRhs& f, double t0, const Eigen::VectorXd& y0, double t1, const OdeOptions& opts) {
    OdeTrajectory traj;
    traj.t.push_back(t0);
    traj.y.push_back(y0);
    integrate(f, t0, y0, t1, opts, [&](double t, const Eigen::VectorXd& y) {
        traj.t.push_back(t);
        traj.y.push_back(y);
    });
    return traj;
}

Eigen::VectorXd dormand_prince_to(const OdeRhs& f, double t0, const Eigen::VectorXd& y0, double t1,
                                  const OdeOptions& opts) {
    return integrate(f, t0, y0, t1, opts, [](double, const Eigen::VectorXd&) {});
}

}  // namespace slag
