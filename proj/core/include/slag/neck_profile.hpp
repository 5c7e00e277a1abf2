#pragma once

#include <memory>
#include <vector>

#include "slag/cm_geometry.hpp"
#include "slag/quadrature.hpp"

namespace slag {

/// Shared data of the Lawlor (alpha = 0) and expander (alpha > 0) necks:
/// P(x) = (e^{αx²}∏(1 + a_k x²) − 1)/x².
struct NeckSpec {
    int m = 3;
    std::vector<double> a;
    double alpha = 0.0;

    static NeckSpec make(std::vector<double> a, double alpha = 0.0);
};

/// P, its log-derivative and the profile integrands, evaluated in log space so
/// that neither the polynomial nor the Gaussian factor overflows.
class NeckIntegrand {
public:
    explicit NeckIntegrand(NeckSpec spec);

    const NeckSpec& spec() const { return spec_; }
    int dim() const { return spec_.m + 1; }

    double logP(double x) const;
    double P(double x) const;
    double q(double x) const;  // P^{-1/2}
    double dlogPdx(double x) const;

    /// (a_k q/(1 + a_k x²))_{k<m} followed by q/2.
    void values(double x, Eigen::Ref<Eigen::VectorXd> out) const;

    /// Certified upper bound for ∫_X^∞ of component c, X > 0.
    double tailBound(int c, double X) const;

private:
    double logRPlus(double t, double* ratio) const;

    NeckSpec spec_;
    std::vector<double> e_;  // elementary symmetric e_1..e_m
};

struct ProfileOptions {
    QuadratureOptions quad{0.0, 1e-13, 4000};
    double tableHalfWidth = 6.0;  // in u = asinh(x)
    double tableStep = 0.125;
    /// 1 for the true phase; other values rescale the arg term (fault injection).
    double phaseArgScale = 1.0;
};

/// ∫_X^∞ of every component, each to relative accuracy.
Eigen::VectorXd neck_tail(const NeckIntegrand& g, double X, const QuadratureOptions& opts);

/// Full-line integrals (φ_1..φ_m, A) without building a table.
Eigen::VectorXd neck_totals(const NeckIntegrand& g, const QuadratureOptions& opts);

/// A neck with tabulated cumulative profiles. Immutable after construction.
class NeckProfile {
public:
    explicit NeckProfile(NeckSpec spec, ProfileOptions opts = {});

    const NeckSpec& spec() const { return g_.spec(); }
    const NeckIntegrand& integrand() const { return g_; }
    const ProfileOptions& options() const { return opts_; }
    int dim() const { return g_.spec().m; }

    std::vector<double> phis() const;
    double sumPhi() const;
    double potentialTotal() const { return totals_(spec().m); }
    /// The same limits reached by marching the cumulative table out to +∞
    /// (a different partition from the doubled half-line totals).
    Eigen::VectorXd limitsFromTable() const;

    /// (ψ_1(y)..ψ_m(y), f(y)) with ψ_k(−∞) = f(−∞) = 0.
    Eigen::VectorXd cumulative(double y) const;
    std::vector<Complex> z(double y) const;

    /// arg(−y − iP(y)^{−1/2}) in (−π, 0), tending to 0 at y → −∞.
    double argTerm(double y) const;
    double theta(double y) const;
    double dThetaDy(double y) const;
    /// λ(∂/∂y) along the parametrization, = ½P(y)^{−1/2}.
    double liouvilleDy(double y) const { return 0.5 * g_.q(y); }

    LagrangianSample sample(double y, const RVector& x) const;

private:
    NeckIntegrand g_;
    ProfileOptions opts_;
    Eigen::VectorXd totals_;
    std::vector<Eigen::VectorXd> table_;  // cumulative at u_i = −U + i·h
    double uMax_ = 0.0;
};

/// Unit vectors in R^m completing x to a basis with det[x, w] = −1.
RMatrix sphere_tangents(const RVector& x);

/// diag(e^{iφ̃_k})·(base neck) with φ̃_k = π − φ_k(base): asymptotic to Π₀ and
/// Π_φ̃ with Σφ̃ = mπ − Σφ(base).
class TildeNeck {
public:
    explicit TildeNeck(std::shared_ptr<const NeckProfile> base);

    const NeckProfile& base() const { return *base_; }
    const std::vector<double>& phis() const { return phis_; }
    double sumPhi() const;
    /// Grading shift Σφ̃ − (m−1)π added to the base phase.
    double thetaOffset() const;
    /// Potential limit difference; equals −(base potential total).
    double invariant() const { return -base_->potentialTotal(); }

    LagrangianSample sample(double y, const RVector& x) const;

private:
    std::shared_ptr<const NeckProfile> base_;
    std::vector<double> phis_;
};

}  // namespace slag
