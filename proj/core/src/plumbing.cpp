#include "slag/plumbing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slag/errors.hpp"

namespace slag {

double smoothstep5(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

double smoothstep5_prime(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double v = u * (1.0 - u);
    return 30.0 * v * v;
}

PlumbingChart PlumbingChart::make(AngleVector phis, double T) {
    if (phis.size() < 3) throw PreconditionError("m must be at least 3");
    if (!(T > 0.0) || !std::isfinite(T)) throw PreconditionError("T must be positive");
    return PlumbingChart(std::move(phis), T);
}

double PlumbingChart::eta(double s) const {
    const double v = smoothstep5((std::abs(s) - T_) / T_);
    return s < 0.0 ? -v : v;
}

double PlumbingChart::etaPrime(double s) const { return smoothstep5_prime((std::abs(s) - T_) / T_) / T_; }

namespace {

void checkDim(int m, const PlumbingChart& chart) {
    if (m != chart.m()) throw PreconditionError("point dimension differs from the chart");
}

double cot(double phi) { return std::cos(phi) / std::sin(phi); }

}  // namespace

DarbouxCoords to_darboux(const CmPoint& p, const PlumbingChart& chart) {
    const int m = p.dim();
    checkDim(m, chart);
    DarbouxCoords d{RVector(m), RVector(m)};
    for (int j = 0; j < m; ++j) {
        const Complex z = p.coords(j);
        d.x(j) = z.real() - cot(chart.phis()[static_cast<std::size_t>(j)]) * z.imag();
        d.y(j) = z.imag();
    }
    return d;
}

CmPoint from_darboux(const DarbouxCoords& d, const PlumbingChart& chart) {
    const auto m = static_cast<int>(d.x.size());
    checkDim(m, chart);
    if (d.y.size() != m) throw PreconditionError("x and y differ in length");
    CVector z(m);
    for (int j = 0; j < m; ++j)
        z(j) = Complex(d.x(j) + cot(chart.phis()[static_cast<std::size_t>(j)]) * d.y(j), d.y(j));
    return CmPoint::make(z);
}

RVector darboux_tangent(const CVector& v, const PlumbingChart& chart) {
    const auto m = static_cast<int>(v.size());
    checkDim(m, chart);
    RVector out(2 * m);
    for (int j = 0; j < m; ++j) {
        out(j) = v(j).real() - cot(chart.phis()[static_cast<std::size_t>(j)]) * v(j).imag();
        out(m + j) = v(j).imag();
    }
    return out;
}

double sphere_chart_radius(double r) {
    if (!(r > 0.0)) throw GeometryError("sphere chart needs r > 0");
    return 1.0 / std::log1p(r * r);
}

double sphere_chart_radius_inverse(double rTilde) {
    if (!(rTilde > 0.0)) throw GeometryError("inverse sphere chart needs r~ > 0");
    return std::sqrt(std::expm1(1.0 / rTilde));
}

RVector sphere_chart(const RVector& x) {
    const double r = x.norm();
    if (r == 0.0) throw GeometryError("sphere chart excludes x = 0");
    return (sphere_chart_radius(r) / r) * x;
}

RVector sphere_chart_inverse(const RVector& xTilde) {
    const double rt = xTilde.norm();
    if (rt == 0.0) throw GeometryError("x~ = 0 is the point at infinity");
    return (sphere_chart_radius_inverse(rt) / rt) * xTilde;
}

double compactified_graph_value(const ScalarField& f, double rho, const RVector& xTilde) {
    if (!(rho < 0.0)) throw PreconditionError("compactification needs decay rate rho < 0");
    if (xTilde.norm() == 0.0) return 0.0;
    const RVector x = sphere_chart_inverse(xTilde);
    if (!x.allFinite()) return 0.0;  // beyond double range f has decayed to nothing
    return f.value(x);
}

CompactifiedField::CompactifiedField(FieldPtr f, double rho) : f_(std::move(f)), rho_(rho) {
    if (!f_) throw PreconditionError("CompactifiedField needs a field");
    if (!(rho_ < 0.0)) throw PreconditionError("compactification needs decay rate rho < 0");
}

double plumbing_h(const PlumbingChart& chart, const DarbouxCoords& d) {
    const double s = d.x.squaredNorm() - d.y.squaredNorm();
    return -0.5 * chart.eta(s) * d.x.dot(d.y);
}

RVector liouville_tilde_covector(const PlumbingChart& chart, const DarbouxCoords& d) {
    const auto m = static_cast<int>(d.x.size());
    checkDim(m, chart);
    const double s = d.x.squaredNorm() - d.y.squaredNorm();
    const double xy = d.x.dot(d.y);
    const double e = chart.eta(s);
    const double ep = chart.etaPrime(s);
    RVector c(2 * m);
    c.head(m) = -0.5 * d.y - 0.5 * (2.0 * ep * xy * d.x + e * d.y);
    c.tail(m) = 0.5 * d.x - 0.5 * (-2.0 * ep * xy * d.y + e * d.x);
    return c;
}

double liouville_tilde(const PlumbingChart& chart, const DarbouxCoords& d, const RVector& v) {
    if (v.size() != 2 * d.x.size()) throw PreconditionError("tangent vector must have 2m components");
    return liouville_tilde_covector(chart, d).dot(v);
}

double compactified_potential(double fL, double h, CompactPointKind which, double A) {
    switch (which) {
        case CompactPointKind::Interior: return fL + h;
        case CompactPointKind::Infinity0: return 0.0;
        case CompactPointKind::InfinityPhi: return A;
    }
    return 0.0;
}

NeckEndGraph::NeckEndGraph(std::shared_ptr<const NeckProfile> neck) : neck_(std::move(neck)) {
    if (!neck_) throw PreconditionError("NeckEndGraph needs a neck");
}

NeckEndGraph::Preimage NeckEndGraph::preimage(const RVector& X) const {
    const int m = neck_->dim();
    if (X.size() != m) throw PreconditionError("point dimension differs from the neck");
    const auto& a = neck_->spec().a;
    const double r = X.norm();
    double maxInv = 0.0;
    for (double ak : a) maxInv = std::max(maxInv, 1.0 / ak);
    if (r * r <= 1.01 * maxInv) throw GeometryError("point lies inside the neck region");

    // Σ(X_k/(ρ_k cos ψ_k))² − 1, decreasing in |y| along the end.
    auto excess = [&](double y, Eigen::VectorXd* c) {
        const Eigen::VectorXd cum = neck_->cumulative(y);
        if (c) *c = cum;
        double s = 0.0;
        for (int k = 0; k < m; ++k) {
            const double rho = std::sqrt(1.0 / a[static_cast<std::size_t>(k)] + y * y);
            const double cs = std::cos(cum(k));
            if (cs <= 0.0) return std::numeric_limits<double>::infinity();
            s += std::pow(X(k) / (rho * cs), 2);
        }
        return s - 1.0;
    };

    double hi = -std::sqrt(0.99 * (r * r - maxInv));
    double lo = -2.0 * r - 1.0;
    if (!(excess(lo, nullptr) < 0.0) || !(excess(hi, nullptr) > 0.0))
        throw GeometryError("point is not on the graph end of the neck");
    for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::abs(lo); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (excess(mid, nullptr) < 0.0) lo = mid;
        else hi = mid;
    }

    Preimage out;
    out.y = 0.5 * (lo + hi);
    Eigen::VectorXd cum;
    excess(out.y, &cum);
    RVector xi(m);
    for (int k = 0; k < m; ++k) {
        const double rho = std::sqrt(1.0 / a[static_cast<std::size_t>(k)] + out.y * out.y);
        xi(k) = X(k) / (rho * std::cos(cum(k)));
    }
    out.sphere = xi / xi.norm();
    out.X.resize(m);
    out.Y.resize(m);
    for (int k = 0; k < m; ++k) {
        const double rho = std::sqrt(1.0 / a[static_cast<std::size_t>(k)] + out.y * out.y);
        out.X(k) = rho * std::cos(cum(k)) * out.sphere(k);
        out.Y(k) = rho * std::sin(cum(k)) * out.sphere(k);
    }
    out.potential = cum(m);
    return out;
}

double NeckEndGraph::value(const Eigen::VectorXd& X) const {
    const Preimage p = preimage(X);
    return 0.5 * p.X.dot(p.Y) - p.potential;
}

}  // namespace slag
