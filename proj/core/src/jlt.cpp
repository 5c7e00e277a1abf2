#include "slag/jlt.hpp"

#include <cmath>
#include <string>

#include "slag/errors.hpp"

namespace slag {

JltParams JltParams::make(double alpha, std::vector<double> a) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw PreconditionError("alpha must be positive; use lawlor");
    NeckSpec::make(a, alpha);
    JltParams p;
    p.m = static_cast<int>(a.size());
    p.alpha = alpha;
    p.a = std::move(a);
    return p;
}

double jlt_closed_form_A(double sumPhi, double alpha, double factor) {
    return (kPi - sumPhi) / (factor * alpha);
}

double jlt_tilde_closed_form_A(double sumPhiTilde, int m, double alpha, double factor) {
    return ((m - 1) * kPi - sumPhiTilde) / (factor * alpha);
}

double jlt_P(const JltParams& params, double x) { return NeckIntegrand(params.spec()).P(x); }

JltAngles jlt_angles(const JltParams& params, double factor, const QuadratureOptions& opts) {
    const Eigen::VectorXd t = neck_totals(NeckIntegrand(params.spec()), opts);
    std::vector<double> phis(t.data(), t.data() + params.m);
    AngleVector av = AngleVector::make(std::move(phis));
    const double a = jlt_closed_form_A(av.sum(), params.alpha, factor);
    return JltAngles{std::move(av), a};
}

double JltInvariant::discrepancy() const { return std::abs(closedForm - potentialLimit); }

JltExpander::JltExpander(JltParams params, ProfileOptions opts)
    : params_(std::move(params)), profile_(std::make_shared<NeckProfile>(params_.spec(), opts)) {}

JltAngles JltExpander::angles(double factor) const {
    AngleVector av = AngleVector::make(profile_->phis());
    const double a = jlt_closed_form_A(av.sum(), params_.alpha, factor);
    return JltAngles{std::move(av), a};
}

LagrangianSample JltExpander::point(const NeckPoint& pt) const { return profile_->sample(pt.y, pt.x); }

std::pair<double, double> JltExpander::thetaLimits() const {
    const Eigen::VectorXd lim = profile_->limitsFromTable();
    const double scale = profile_->options().phaseArgScale;
    // arg(−y − iq) → 0 as y → −∞ and → −π as y → +∞.
    return {0.0, lim.head(params_.m).sum() - scale * kPi};
}

double JltExpander::expanderResidual(double y, double factor) const {
    return std::abs(profile_->dThetaDy(y) + factor * params_.alpha * profile_->liouvilleDy(y));
}

JltInvariant JltExpander::invariant(double factor) const {
    JltInvariant inv;
    inv.factor = factor;
    inv.closedForm = jlt_closed_form_A(profile_->sumPhi(), params_.alpha, factor);
    inv.potentialLimit = profile_->limitsFromTable()(params_.m);
    return inv;
}

LagrangianSample jlt_point(const JltParams& params, const NeckPoint& pt) { return JltExpander(params).point(pt); }

double jlt_expander_residual(const JltParams& params, double y, double factor) {
    return JltExpander(params).expanderResidual(y, factor);
}

JltInvariant jlt_invariant_A(const JltParams& params, double factor) { return JltExpander(params).invariant(factor); }

JltTilde jlt_tilde(const JltParams& params, double factor) {
    JltExpander base(params);
    TildeNeck neck = base.tilde();
    JltInvariant inv;
    inv.factor = factor;
    inv.closedForm = jlt_tilde_closed_form_A(neck.sumPhi(), params.m, params.alpha, factor);
    inv.potentialLimit = -base.profileEngine()->limitsFromTable()(params.m);
    return JltTilde{std::move(neck), inv};
}

namespace {

void validateTarget(double alpha, const AngleVector& target) {
    if (!(alpha > 0.0)) throw PreconditionError("alpha must be positive; use lawlor");
    if (target.size() < 3) throw PreconditionError("target needs m >= 3 angles");
    if (!(target.sum() > 0.0 && target.sum() < kPi))
        throw PreconditionError("expander angles must satisfy 0 < sum < pi (got " + std::to_string(target.sum()) + ")");
}

Eigen::VectorXd anglesAt(const std::vector<double>& a, double alpha, const QuadratureOptions& quad) {
    return neck_totals(NeckIntegrand(NeckSpec::make(a, alpha)), quad).head(static_cast<Eigen::Index>(a.size()));
}

}  // namespace

std::vector<double> jlt_initial_guess(double alpha, const AngleVector& target, const QuadratureOptions& opts) {
    validateTarget(alpha, target);
    const int m = target.size();
    std::vector<double> shape(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) shape[static_cast<std::size_t>(k)] = std::pow(std::tan(target[static_cast<std::size_t>(k)] / 2.0), 2);

    auto scaled = [&](double logS) {
        std::vector<double> a = shape;
        for (double& ak : a) ak *= std::exp(logS);
        return a;
    };
    // Σφ increases from 0 to π along the ray s·shape; bisect on log s.
    double lo = -40.0, hi = 40.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (anglesAt(scaled(mid), alpha, opts).sum() < target.sum()) lo = mid;
        else hi = mid;
    }
    std::vector<double> a = scaled(0.5 * (lo + hi));
    const Eigen::VectorXd t = anglesAt(a, alpha, opts);
    for (int k = 0; k < m; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        a[kk] *= std::pow(std::tan(target[kk] / 2.0) / std::tan(t(k) / 2.0), 2);
    }
    return a;
}

JltInversion jlt_invert(double alpha, const AngleVector& target, const InversionOptions& opts) {
    validateTarget(alpha, target);
    const int m = target.size();
    std::vector<double> guess = opts.initialGuess.empty() ? jlt_initial_guess(alpha, target, opts.quad) : opts.initialGuess;
    if (static_cast<int>(guess.size()) != m) throw PreconditionError("initial guess has wrong length");

    Eigen::VectorXd x0(m);
    for (int k = 0; k < m; ++k) {
        if (!(guess[static_cast<std::size_t>(k)] > 0.0)) throw PreconditionError("initial guess must be positive");
        x0(k) = std::log(guess[static_cast<std::size_t>(k)]);
    }
    const QuadratureOptions quad = opts.quad;
    auto residual = [&](const Eigen::VectorXd& x) {
        std::vector<double> a(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k) a[static_cast<std::size_t>(k)] = std::exp(x(k));
        Eigen::VectorXd r = anglesAt(a, alpha, quad);
        for (int k = 0; k < m; ++k) r(k) -= target[static_cast<std::size_t>(k)];
        return r;
    };
    NewtonTrace trace = damped_newton(residual, x0, opts.newton);
    if (!trace.converged) throw ConvergenceError("jlt_invert: Newton did not converge", trace.bestResidual());

    std::vector<double> a(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) a[static_cast<std::size_t>(k)] = std::exp(trace.solution(k));
    JltInversion out{JltParams::make(alpha, a), trace, 0.0};
    out.forwardResidual = residual(trace.solution).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace slag
