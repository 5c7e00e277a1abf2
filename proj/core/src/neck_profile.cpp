#include "slag/neck_profile.hpp"

#include <algorithm>
#include <cmath>

#include "slag/errors.hpp"

namespace slag {

namespace {

// g(s) = (1 − e^{−s})/s and g'(s), with the series near 0.
double gFun(double s) { return s < 1e-300 ? 1.0 : -std::expm1(-s) / s; }

double gPrime(double s) {
    if (s < 0.1) {
        double term = 1.0, sum = 0.0, fact = 2.0;  // (n+1)!
        for (int n = 1; n <= 14; ++n) {
            sum += ((n % 2) ? -1.0 : 1.0) * n * term / fact;
            term *= s;
            fact *= (n + 2);
        }
        return sum;
    }
    return (std::exp(-s) * (1.0 + s) - 1.0) / (s * s);
}

}  // namespace

NeckSpec NeckSpec::make(std::vector<double> a, double alpha) {
    if (a.size() < 3) throw PreconditionError("neck dimension m must be >= 3");
    for (double ak : a)
        if (!(ak > 0.0) || !std::isfinite(ak)) throw PreconditionError("a_k must be positive");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw PreconditionError("alpha must be non-negative");
    NeckSpec s;
    s.m = static_cast<int>(a.size());
    s.a = std::move(a);
    s.alpha = alpha;
    return s;
}

NeckIntegrand::NeckIntegrand(NeckSpec spec) : spec_(std::move(spec)) {
    const int m = spec_.m;
    std::vector<double> e(static_cast<std::size_t>(m) + 1, 0.0);
    e[0] = 1.0;
    for (double ak : spec_.a)
        for (int j = m; j >= 1; --j) e[static_cast<std::size_t>(j)] += ak * e[static_cast<std::size_t>(j) - 1];
    e_ = std::move(e);
}

// log(R(t) + α g(αt)) where R(t) = Σ_{j≥1} e_j t^{j−1}; optionally returns
// (R' + α² g'(αt))/(R + α g(αt)).
double NeckIntegrand::logRPlus(double t, double* ratio) const {
    const int m = spec_.m;
    const double alpha = spec_.alpha;
    const double s = alpha * t;
    const double ag = alpha * gFun(s);
    const double agp = alpha * alpha * gPrime(s);
    if (t <= 1.0) {
        double r = 0.0, rp = 0.0;
        for (int j = m; j >= 1; --j) r = r * t + e_[static_cast<std::size_t>(j)];
        for (int j = m; j >= 2; --j) rp = rp * t + (j - 1) * e_[static_cast<std::size_t>(j)];
        if (ratio) *ratio = (rp + agp) / (r + ag);
        return std::log(r + ag);
    }
    // Scale by t^{m−1}: R = t^{m−1}·Rs, R' = t^{m−2}·Rps.
    const double inv = 1.0 / t;
    double rs = 0.0, rps = 0.0;
    for (int j = 1; j <= m; ++j) rs = rs * inv + e_[static_cast<std::size_t>(j)];
    for (int j = 2; j <= m; ++j) rps = rps * inv + (j - 1) * e_[static_cast<std::size_t>(j)];
    const double lt = std::log(t);
    const double tm1 = std::exp(-(m - 1) * lt);  // t^{−(m−1)}, may underflow harmlessly
    const double denom = rs + ag * tm1;
    if (ratio) *ratio = (rps * inv + agp * tm1) / denom;
    return (m - 1) * lt + std::log(denom);
}

double NeckIntegrand::logP(double x) const {
    const double t = x * x;
    return spec_.alpha * t + logRPlus(t, nullptr);
}

double NeckIntegrand::P(double x) const { return std::exp(logP(x)); }

double NeckIntegrand::q(double x) const { return std::exp(-0.5 * logP(x)); }

double NeckIntegrand::dlogPdx(double x) const {
    double ratio = 0.0;
    logRPlus(x * x, &ratio);
    return 2.0 * x * (spec_.alpha + ratio);
}

void NeckIntegrand::values(double x, Eigen::Ref<Eigen::VectorXd> out) const {
    const double qq = q(x);
    const double t = x * x;
    for (int k = 0; k < spec_.m; ++k) {
        const double ak = spec_.a[static_cast<std::size_t>(k)];
        out(k) = ak * qq / (1.0 + ak * t);
    }
    out(spec_.m) = 0.5 * qq;
}

double NeckIntegrand::tailBound(int c, double X) const {
    const int m = spec_.m;
    const double em = e_[static_cast<std::size_t>(m)];
    const double rootEm = std::sqrt(em);
    // integrand ≤ coef·x^{−n}·e^{−αx²/2}
    const bool isPotential = (c == m);
    const int n = isPotential ? m - 1 : m + 1;
    const double coef = (isPotential ? 0.5 : 1.0) / rootEm;
    double bound = coef * std::pow(X, 1.0 - n) / (n - 1);
    if (spec_.alpha > 0.0) {
        const double gauss = coef * std::exp(-n * std::log(X) - 0.5 * spec_.alpha * X * X) / (spec_.alpha * X);
        bound = std::min(bound, gauss);
    }
    return bound;
}

Eigen::VectorXd neck_tail(const NeckIntegrand& g, double X, const QuadratureOptions& opts) {
    const int dim = g.dim();
    auto integrand = [&g](double u, Eigen::Ref<Eigen::VectorXd> out) {
        g.values(std::sinh(u), out);
        out *= std::cosh(u);
    };
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(dim);
    double u = std::asinh(std::max(X, 0.0));
    for (int panel = 0; panel < 400; ++panel) {
        const double next = u + 1.0;
        acc += gauss_kronrod(integrand, dim, u, next, opts).value;
        u = next;
        const double xe = std::sinh(u);
        bool done = true;
        for (int c = 0; c < dim; ++c) {
            const double tol = std::max(opts.absTol, opts.relTol * std::abs(acc(c)));
            if (g.tailBound(c, xe) > 0.1 * tol) {
                done = false;
                break;
            }
        }
        if (done) return acc;
    }
    throw ConvergenceError("tail truncation did not reach tolerance", 0.0);
}

Eigen::VectorXd neck_totals(const NeckIntegrand& g, const QuadratureOptions& opts) {
    return 2.0 * neck_tail(g, 0.0, opts);
}

NeckProfile::NeckProfile(NeckSpec spec, ProfileOptions opts)
    : g_(std::move(spec)), opts_(opts) {
    totals_ = neck_totals(g_, opts_.quad);
    const int dim = g_.dim();
    const double h = opts_.tableStep;
    const int cells = static_cast<int>(std::ceil(2.0 * opts_.tableHalfWidth / h));
    uMax_ = 0.5 * cells * h;
    auto integrand = [this](double u, Eigen::Ref<Eigen::VectorXd> out) {
        g_.values(std::sinh(u), out);
        out *= std::cosh(u);
    };
    table_.reserve(static_cast<std::size_t>(cells) + 1);
    table_.push_back(neck_tail(g_, std::sinh(uMax_), opts_.quad));
    for (int i = 0; i < cells; ++i) {
        const double u0 = -uMax_ + i * h;
        table_.push_back(table_.back() + gauss_kronrod(integrand, dim, u0, u0 + h, opts_.quad).value);
    }
}

std::vector<double> NeckProfile::phis() const {
    return std::vector<double>(totals_.data(), totals_.data() + spec().m);
}

Eigen::VectorXd NeckProfile::limitsFromTable() const {
    return table_.back() + neck_tail(g_, std::sinh(uMax_), opts_.quad);
}

double NeckProfile::sumPhi() const { return totals_.head(spec().m).sum(); }

Eigen::VectorXd NeckProfile::cumulative(double y) const {
    const double u = std::asinh(y);
    if (u <= -uMax_) return neck_tail(g_, -y, opts_.quad);
    if (u >= uMax_) return totals_ - neck_tail(g_, y, opts_.quad);
    const double h = opts_.tableStep;
    auto i = static_cast<std::size_t>(std::floor((u + uMax_) / h));
    i = std::min(i, table_.size() - 2);
    const double u0 = -uMax_ + static_cast<double>(i) * h;
    auto integrand = [this](double s, Eigen::Ref<Eigen::VectorXd> out) {
        g_.values(std::sinh(s), out);
        out *= std::cosh(s);
    };
    QuadratureOptions local = opts_.quad;
    local.absTol = 1e-16;
    return table_[i] + gauss_kronrod(integrand, g_.dim(), u0, u, local).value;
}

std::vector<Complex> NeckProfile::z(double y) const {
    const Eigen::VectorXd c = cumulative(y);
    std::vector<Complex> out(static_cast<std::size_t>(spec().m));
    for (int k = 0; k < spec().m; ++k) {
        const double rho = std::sqrt(1.0 / spec().a[static_cast<std::size_t>(k)] + y * y);
        out[static_cast<std::size_t>(k)] = std::polar(rho, c(k));
    }
    return out;
}

double NeckProfile::argTerm(double y) const { return std::atan2(-g_.q(y), -y); }

double NeckProfile::theta(double y) const {
    const Eigen::VectorXd c = cumulative(y);
    return c.head(spec().m).sum() + opts_.phaseArgScale * argTerm(y);
}

double NeckProfile::dThetaDy(double y) const {
    const double qq = g_.q(y);
    double psiSum = 0.0;
    for (double ak : spec().a) psiSum += ak * qq / (1.0 + ak * y * y);
    const double dq = -0.5 * qq * g_.dlogPdx(y);
    const double dArg = (y * dq - qq) / (y * y + qq * qq);
    return psiSum + opts_.phaseArgScale * dArg;
}

RMatrix sphere_tangents(const RVector& x) {
    const Eigen::Index m = x.size();
    RVector v = -x;
    // Reflect ±e₁ onto x, choosing the sign that avoids cancellation.
    const double sign = x(0) >= 0.0 ? -1.0 : 1.0;
    v(0) += sign;
    RMatrix h = RMatrix::Identity(m, m);
    const double vv = v.squaredNorm();
    if (vv > 0.0) h -= (2.0 / vv) * v * v.transpose();
    RMatrix w = h.rightCols(m - 1);
    RMatrix full(m, m);
    full.col(0) = x;
    full.rightCols(m - 1) = w;
    if (full.determinant() > 0.0) w.col(m - 2) *= -1.0;
    return w;
}

LagrangianSample NeckProfile::sample(double y, const RVector& x) const {
    const int m = spec().m;
    if (x.size() != m) throw PreconditionError("sphere point has wrong dimension");
    if (std::abs(x.norm() - 1.0) > 1e-12) throw PreconditionError("sphere point must have |x| = 1");
    const Eigen::VectorXd c = cumulative(y);
    const double qq = g_.q(y);

    CVector zk(m), dz(m);
    for (int k = 0; k < m; ++k) {
        const double ak = spec().a[static_cast<std::size_t>(k)];
        const double rho = std::sqrt(1.0 / ak + y * y);
        const double dpsi = ak * qq / (1.0 + ak * y * y);
        const Complex e = std::polar(1.0, c(k));
        zk(k) = e * rho;
        dz(k) = e * Complex(y / rho, dpsi * rho);
    }

    LagrangianSample s;
    s.y = y;
    s.point = CmPoint::make(zk.cwiseProduct(x.cast<Complex>()));
    s.dPoint = dz.cwiseProduct(x.cast<Complex>());
    const RMatrix w = sphere_tangents(x);
    CMatrix cols(m, m);
    cols.col(0) = s.dPoint;
    for (int j = 0; j < m - 1; ++j) cols.col(j + 1) = zk.cwiseProduct(w.col(j).cast<Complex>());
    s.frame = TangentFrame{s.point, gram_schmidt_real(cols)};
    s.theta = c.head(m).sum() + opts_.phaseArgScale * argTerm(y);
    s.potential = c(m);
    return s;
}

TildeNeck::TildeNeck(std::shared_ptr<const NeckProfile> base) : base_(std::move(base)) {
    for (double p : base_->phis()) phis_.push_back(kPi - p);
}

double TildeNeck::sumPhi() const {
    double s = 0.0;
    for (double p : phis_) s += p;
    return s;
}

double TildeNeck::thetaOffset() const { return sumPhi() - (base_->dim() - 1) * kPi; }

LagrangianSample TildeNeck::sample(double y, const RVector& x) const {
    LagrangianSample s = base_->sample(y, x);
    const int m = base_->dim();
    CVector d(m);
    for (int k = 0; k < m; ++k) d(k) = std::polar(1.0, phis_[static_cast<std::size_t>(k)]);
    s.point.coords = d.cwiseProduct(s.point.coords);
    s.dPoint = d.cwiseProduct(s.dPoint);
    s.frame.vectors = d.asDiagonal() * s.frame.vectors;
    if (m % 2 == 0) s.frame.vectors.col(0) *= -1.0;
    s.frame.base = s.point;
    s.theta += thetaOffset();
    s.potential -= base_->potentialTotal();
    return s;
}

}  // namespace slag
