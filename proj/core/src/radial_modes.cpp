#include "slag/radial_modes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slag/errors.hpp"

namespace slag {

double RadialOde::secondDerivative(double t, double a, double ap) const {
    return -(2.0 * (alpha + b * t) * ap + kappa * a) / (4.0 * t * t);
}

RadialOde radial_ode(int m, int k, double alpha, ModeWeight weight) {
    if (m < 3) throw PreconditionError("m must be at least 3");
    if (k < 0) throw PreconditionError("k must be non-negative");
    if (!(alpha > 0.0)) throw PreconditionError("alpha must be positive");
    RadialOde ode;
    ode.m = m;
    ode.k = k;
    ode.alpha = alpha;
    ode.weight = weight;
    const double eig = static_cast<double>(k) * (m + k - 2);
    if (weight == ModeWeight::RPowMinusMMinus1) {
        ode.b = m + 6;
        ode.kappa = 3.0 * (m + 1) - eig;
    } else {
        ode.b = m + 8;
        ode.kappa = 4.0 * (m + 2) - eig;
    }
    return ode;
}

namespace {

double recursionFactor(const RadialOde& ode, int l) {
    const double dl = l;
    return -(4.0 * dl * (dl - 1.0) + 2.0 * ode.b * dl + ode.kappa) / (2.0 * ode.alpha * (dl + 1.0));
}

/// Index of the smallest |c_l t^l| (l ≥ 1), the optimal truncation point.
std::size_t optimalIndex(const std::vector<double>& c, double t) {
    std::size_t best = c.size() - 1;
    double bestMag = INFINITY;
    double tp = 1.0;
    for (std::size_t l = 0; l < c.size(); ++l) {
        const double mag = std::abs(c[l]) * tp;
        if (l >= 1 && mag < bestMag) {
            bestMag = mag;
            best = l;
            if (mag == 0.0) break;
        }
        tp *= t;
    }
    return best;
}

/// Generates coefficients until the term at t drops below tol relative to the sum.
/// Returns false if the terms start growing for good before that.
bool seriesConverges(const RadialOde& ode, double t, double tol, int maxTerms, std::vector<double>& out) {
    out.assign(1, 1.0);
    double sum = 1.0, term = 1.0, smallest = 1.0;
    for (int l = 0; l + 1 < maxTerms; ++l) {
        const double c = out.back() * recursionFactor(ode, l);
        out.push_back(c);
        term = c * std::pow(t, l + 1);
        sum += term;
        if (std::abs(term) <= tol * std::max(1.0, std::abs(sum))) return true;
        smallest = std::min(smallest, std::abs(term));
        // Past the turning point of 2l·t/α the terms grow without bound.
        if (std::abs(term) > 1e3 * smallest || !std::isfinite(term)) return false;
    }
    return false;
}

}  // namespace

std::vector<double> radial_taylor(const RadialOde& ode, int n) {
    std::vector<double> c;
    if (n <= 0) return c;
    c.push_back(1.0);
    for (int l = 0; l + 1 < n; ++l) c.push_back(c.back() * recursionFactor(ode, l));
    return c;
}

double AkRecord::seriesValue(double t) const {
    const std::size_t n = optimalIndex(taylor, t);
    double s = 0.0;
    for (std::size_t l = n + 1; l-- > 0;) s = s * t + taylor[l];
    return s;
}

double AkRecord::seriesDerivative(double t) const {
    if (taylor.size() < 2) return 0.0;
    const std::size_t n = optimalIndex(taylor, t);
    double s = 0.0;
    for (std::size_t l = n + 1; l-- > 1;) s = s * t + static_cast<double>(l) * taylor[l];
    return s;
}

Eigen::Vector2d AkRecord::eval(double t) const {
    if (t < 0.0) throw PreconditionError("A_k is evaluated for t >= 0");
    if (t <= tStart || nodes.empty()) return {seriesValue(t), seriesDerivative(t)};
    auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
    const std::size_t i = static_cast<std::size_t>(std::distance(nodes.begin(), it)) - 1;
    if (nodes[i] == t) return states[i];
    const RadialOde o = ode;
    OdeRhs rhs = [o](double s, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
        dy.resize(2);
        dy(0) = y(1);
        dy(1) = o.secondDerivative(s, y(0), y(1));
    };
    Eigen::VectorXd y0 = states[i];
    const Eigen::VectorXd y = dormand_prince_to(rhs, nodes[i], y0, t, odeOptions);
    return {y(0), y(1)};
}

double AkRecord::secondDerivative(double t) const {
    if (t == 0.0) return taylor.size() > 2 ? 2.0 * taylor[2] : 0.0;
    const Eigen::Vector2d s = eval(t);
    return ode.secondDerivative(t, s(0), s(1));
}

AkRecord solve_Ak(int m, int k, double alpha, double T, ModeWeight weight, const AkOptions& opts) {
    if (!(T > 0.0)) throw PreconditionError("T must be positive");
    AkRecord rec;
    rec.ode = radial_ode(m, k, alpha, weight);
    rec.T = T;
    rec.odeOptions = opts.ode;

    const RadialOde o = rec.ode;
    OdeRhs rhs = [o](double s, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
        dy.resize(2);
        dy(0) = y(1);
        dy(1) = o.secondDerivative(s, y(0), y(1));
    };

    double t0 = std::min(0.01, alpha / 10.0);
    double lastDiscrepancy = INFINITY;
    for (int attempt = 0; attempt <= opts.maxHalvings; ++attempt, t0 *= 0.5) {
        std::vector<double> c;
        if (!seriesConverges(rec.ode, t0, opts.seriesTol, opts.maxTerms, c)) continue;
        rec.taylor = std::move(c);
        rec.t0 = t0;
        rec.tStart = 0.5 * t0;

        Eigen::VectorXd y0(2);
        y0 << rec.seriesValue(rec.tStart), rec.seriesDerivative(rec.tStart);
        const OdeTrajectory traj = dormand_prince(rhs, rec.tStart, y0, std::max(T, t0), opts.ode);
        rec.nodes = traj.t;
        rec.states.clear();
        for (const auto& y : traj.y) rec.states.emplace_back(y(0), y(1));

        double disc = 0.0;
        const int np = std::max(2, opts.overlapPoints);
        for (int i = 0; i < np; ++i) {
            const double t = rec.tStart + (t0 - rec.tStart) * i / (np - 1);
            // Integrate past tStart explicitly so the comparison never falls back to the series.
            Eigen::Vector2d rk;
            if (i == 0) {
                rk = rec.states.front();
            } else {
                auto it = std::upper_bound(rec.nodes.begin(), rec.nodes.end(), t);
                const std::size_t j = static_cast<std::size_t>(std::distance(rec.nodes.begin(), it)) - 1;
                Eigen::VectorXd s0 = rec.states[j];
                const Eigen::VectorXd s = dormand_prince_to(rhs, rec.nodes[j], s0, t, opts.ode);
                rk = {s(0), s(1)};
            }
            disc = std::max(disc, std::abs(rk(0) - rec.seriesValue(t)));
        }
        rec.overlapDiscrepancy = disc;
        lastDiscrepancy = disc;
        if (disc < opts.overlapTol) return rec;
    }
    throw ConvergenceError("series/Runge-Kutta overlap for A_k did not reach tolerance (k=" + std::to_string(k) + ")",
                           lastDiscrepancy);
}

bool check_Ak_log_derivative_bound(const AkRecord& rec, const std::vector<double>& tGrid, double slack) {
    if (!(rec.ode.kappa < 0.0))
        throw PreconditionError("log-derivative bound needs k(m+k-2) above the weight threshold");
    const double upper = -rec.ode.kappa / (2.0 * rec.ode.alpha);
    for (double t : tGrid) {
        const Eigen::Vector2d s = rec.eval(t);
        if (!(s(0) > 0.0)) return false;
        const double u = s(1) / s(0);
        if (u < -slack || u > upper + slack) return false;
    }
    return true;
}

namespace {

struct RadialFactor {
    double S, dS, ddS;  // S(r) = r^{−n}e^{−αr²/2}A(r^{−2}) and its r-derivatives
};

RadialFactor radialFactor(const AkRecord& ak, int k, double r) {
    const double alpha = ak.ode.alpha;
    const double n = ak.ode.weightExponent() + k;
    const double t = 1.0 / (r * r);
    const Eigen::Vector2d s = ak.eval(t);
    const double A = s(0), Ap = s(1);
    const double App = ak.ode.secondDerivative(t, A, Ap);

    const double g = std::pow(r, -n) * std::exp(-0.5 * alpha * r * r);
    const double q = -n / r - alpha * r;
    const double dg = g * q;
    const double ddg = g * (q * q + n / (r * r) - alpha);
    const double r3 = r * r * r;
    const double dA = -2.0 * Ap / r3;
    const double ddA = 4.0 * App / (r3 * r3) + 6.0 * Ap / (r3 * r);
    return {g * A, dg * A + g * dA, ddg * A + 2.0 * dg * dA + g * ddA};
}

double radiusOf(const Eigen::VectorXd& x) {
    const double r = x.norm();
    if (!(r > 0.0)) throw PreconditionError("expansion evaluated at r = 0");
    return r;
}

}  // namespace

double assemble_expansion(const std::vector<ExpansionMode>& modes, const Eigen::VectorXd& x) {
    if (modes.empty()) return 0.0;
    const double r = radiusOf(x);
    double f = 0.0;
    for (const auto& md : modes) {
        if (!md.Ak) throw PreconditionError("expansion mode without a radial solution");
        f += radialFactor(*md.Ak, md.k, r).S * md.poly(x);
    }
    return f;
}

ExpansionField::ExpansionField(int m, std::vector<ExpansionMode> modes) : m_(m) {
    for (auto& md : modes) {
        if (!md.Ak) throw PreconditionError("expansion mode without a radial solution");
        if (md.poly.nvars() != m) throw PreconditionError("mode polynomial dimension differs from m");
        if (!md.poly.isZero() && !md.poly.isHomogeneous(md.k)) throw PreconditionError("mode polynomial is not homogeneous of degree k");
        PolynomialField pf(md.poly);
        terms_.push_back({std::move(md), std::move(pf)});
    }
}

double ExpansionField::value(const Eigen::VectorXd& x) const {
    const double r = radiusOf(x);
    double f = 0.0;
    for (const auto& tm : terms_) f += radialFactor(*tm.mode.Ak, tm.mode.k, r).S * tm.poly.value(x);
    return f;
}

Eigen::VectorXd ExpansionField::gradient(const Eigen::VectorXd& x) const {
    const double r = radiusOf(x);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(m_);
    for (const auto& tm : terms_) {
        const RadialFactor rf = radialFactor(*tm.mode.Ak, tm.mode.k, r);
        g += rf.dS / r * tm.poly.value(x) * x + rf.S * tm.poly.gradient(x);
    }
    return g;
}

Eigen::MatrixXd ExpansionField::hessian(const Eigen::VectorXd& x) const {
    const double r = radiusOf(x);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(m_, m_);
    const Eigen::MatrixXd xx = x * x.transpose();
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m_, m_);
    for (const auto& tm : terms_) {
        const RadialFactor rf = radialFactor(*tm.mode.Ak, tm.mode.k, r);
        const double p = tm.poly.value(x);
        const Eigen::VectorXd dp = tm.poly.gradient(x);
        H += rf.ddS / (r * r) * p * xx;
        H += rf.dS * p * (I / r - xx / (r * r * r));
        H += rf.dS / r * (x * dp.transpose() + dp * x.transpose());
        H += rf.S * tm.poly.hessian(x);
    }
    return H;
}

}  // namespace slag
