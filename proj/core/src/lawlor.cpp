#include "slag/lawlor.hpp"

#include <cmath>
#include <string>

#include "slag/errors.hpp"

namespace slag {

LawlorParams LawlorParams::make(std::vector<double> a) {
    NeckSpec::make(a, 0.0);
    LawlorParams p;
    p.m = static_cast<int>(a.size());
    p.a = std::move(a);
    return p;
}

NeckPoint NeckPoint::make(double y, RVector x) {
    if (!std::isfinite(y)) throw PreconditionError("neck coordinate y must be finite");
    if (std::abs(x.norm() - 1.0) > 1e-12) throw PreconditionError("sphere point must have |x| = 1");
    return NeckPoint{y, std::move(x)};
}

double lawlor_P(const LawlorParams& params, double x) {
    return NeckIntegrand(params.spec()).P(x);
}

LawlorAngles lawlor_angles(const LawlorParams& params, const QuadratureOptions& opts) {
    const Eigen::VectorXd t = neck_totals(NeckIntegrand(params.spec()), opts);
    std::vector<double> phis(t.data(), t.data() + params.m);
    return LawlorAngles{AngleVector::make(std::move(phis)), t(params.m)};
}

LawlorNeck::LawlorNeck(LawlorParams params, ProfileOptions opts)
    : params_(std::move(params)), profile_(std::make_shared<NeckProfile>(params_.spec(), opts)) {}

LawlorAngles LawlorNeck::angles() const {
    return LawlorAngles{AngleVector::make(profile_->phis()), profile_->potentialTotal()};
}

RadialProfile LawlorNeck::profile(double y) const {
    const Eigen::VectorXd c = profile_->cumulative(y);
    RadialProfile out;
    for (int k = 0; k < params_.m; ++k) {
        const double rho = std::sqrt(1.0 / params_.a[static_cast<std::size_t>(k)] + y * y);
        out.z.push_back(std::polar(rho, c(k)));
        out.psi.push_back(c(k));
    }
    return out;
}

LagrangianSample LawlorNeck::point(const NeckPoint& pt) const { return profile_->sample(pt.y, pt.x); }

double LawlorNeck::invariantA() const { return profile_->limitsFromTable()(params_.m); }

RadialProfile lawlor_profile(const LawlorParams& params, double y) { return LawlorNeck(params).profile(y); }

LagrangianSample lawlor_point(const LawlorParams& params, const NeckPoint& pt) {
    return LawlorNeck(params).point(pt);
}

double lawlor_invariant_A(const LawlorParams& params) { return LawlorNeck(params).invariantA(); }

TildeNeck lawlor_tilde(const LawlorParams& params) { return LawlorNeck(params).tilde(); }

namespace {

void validateTarget(const LawlorAngles& target) {
    if (target.phis.size() < 3) throw PreconditionError("target needs m >= 3 angles");
    if (std::abs(target.phis.sum() - kPi) > 1e-6)
        throw PreconditionError("Lawlor angles must sum to pi (got " + std::to_string(target.phis.sum()) + ")");
    if (!(target.A > 0.0)) throw PreconditionError("Lawlor invariant A must be positive");
}

Eigen::VectorXd forwardResidual(const Eigen::VectorXd& logA, const LawlorAngles& target,
                                const QuadratureOptions& quad) {
    const int m = target.phis.size();
    std::vector<double> a(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) a[static_cast<std::size_t>(k)] = std::exp(logA(k));
    const Eigen::VectorXd t = neck_totals(NeckIntegrand(NeckSpec::make(a, 0.0)), quad);
    Eigen::VectorXd r(m);
    for (int k = 0; k < m - 1; ++k) r(k) = t(k) - target.phis[static_cast<std::size_t>(k)];
    r(m - 1) = std::log(t(m)) - std::log(target.A);
    return r;
}

}  // namespace

std::vector<double> lawlor_initial_guess(const LawlorAngles& target, const QuadratureOptions& opts) {
    validateTarget(target);
    const int m = target.phis.size();
    const double ref = std::tan(kPi / (2.0 * m));
    std::vector<double> a(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) a[static_cast<std::size_t>(k)] = std::pow(std::tan(target.phis[static_cast<std::size_t>(k)] / 2.0) / ref, 2);

    // One fixed-point pass on the angle ratios.
    Eigen::VectorXd t = neck_totals(NeckIntegrand(NeckSpec::make(a, 0.0)), opts);
    for (int k = 0; k < m; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        a[kk] *= std::pow(std::tan(target.phis[kk] / 2.0) / std::tan(t(k) / 2.0), 2);
    }
    // a ↦ s·a leaves φ fixed and sends A ↦ A/s.
    t = neck_totals(NeckIntegrand(NeckSpec::make(a, 0.0)), opts);
    const double s = t(m) / target.A;
    for (double& ak : a) ak *= s;
    return a;
}

LawlorInversion lawlor_invert(const LawlorAngles& target, const InversionOptions& opts) {
    validateTarget(target);
    const int m = target.phis.size();
    std::vector<double> guess = opts.initialGuess.empty() ? lawlor_initial_guess(target, opts.quad) : opts.initialGuess;
    if (static_cast<int>(guess.size()) != m) throw PreconditionError("initial guess has wrong length");

    Eigen::VectorXd x0(m);
    for (int k = 0; k < m; ++k) {
        if (!(guess[static_cast<std::size_t>(k)] > 0.0)) throw PreconditionError("initial guess must be positive");
        x0(k) = std::log(guess[static_cast<std::size_t>(k)]);
    }
    const QuadratureOptions quad = opts.quad;
    NewtonTrace trace = damped_newton(
        [&](const Eigen::VectorXd& x) { return forwardResidual(x, target, quad); }, x0, opts.newton);
    if (!trace.converged)
        throw ConvergenceError("lawlor_invert: Newton did not converge", trace.bestResidual());

    std::vector<double> a(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) a[static_cast<std::size_t>(k)] = std::exp(trace.solution(k));
    LawlorInversion out{LawlorParams::make(a), trace, 0.0};
    const LawlorAngles back = lawlor_angles(out.params, quad);
    double worst = std::abs(back.A - target.A);
    for (int k = 0; k < m; ++k)
        worst = std::max(worst, std::abs(back.phis[static_cast<std::size_t>(k)] - target.phis[static_cast<std::size_t>(k)]));
    out.forwardResidual = worst;
    return out;
}

}  // namespace slag
