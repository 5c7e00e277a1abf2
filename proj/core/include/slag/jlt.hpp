#pragma once

#include <memory>
#include <vector>

#include "slag/cm_geometry.hpp"
#include "slag/lawlor.hpp"
#include "slag/neck_profile.hpp"
#include "slag/newton.hpp"

namespace slag {

struct JltParams {
    int m = 3;
    double alpha = 1.0;
    std::vector<double> a;

    static JltParams make(double alpha, std::vector<double> a);
    NeckSpec spec() const { return NeckSpec::make(a, alpha); }
};

struct JltAngles {
    AngleVector phis;
    double A = 0.0;  // closed form (π − Σφ)/(c·α)
};

/// Closed-form invariant (π − Σφ)/(c·α) of the expander with angle sum Σφ.
double jlt_closed_form_A(double sumPhi, double alpha, double factor = kExpanderPotentialFactor);
/// Closed-form invariant ((m−1)π − Σφ̃)/(c·α) of the rotated expander.
double jlt_tilde_closed_form_A(double sumPhiTilde, int m, double alpha, double factor = kExpanderPotentialFactor);

/// (e^{αx²}∏(1 + a_k x²) − 1)/x², with α + Σa_k at x = 0.
double jlt_P(const JltParams& params, double x);

JltAngles jlt_angles(const JltParams& params, double factor = kExpanderPotentialFactor,
                     const QuadratureOptions& opts = {0.0, 1e-13, 4000});

struct JltInvariant {
    double closedForm = 0.0;
    double potentialLimit = 0.0;
    double factor = kExpanderPotentialFactor;
    double discrepancy() const;
};

/// The expander L^α_φ with phase θ(y) = Σψ_k(y) + arg(−y − iP(y)^{−1/2}).
class JltExpander {
public:
    explicit JltExpander(JltParams params, ProfileOptions opts = {});

    const JltParams& params() const { return params_; }
    std::shared_ptr<const NeckProfile> profileEngine() const { return profile_; }

    JltAngles angles(double factor = kExpanderPotentialFactor) const;
    LagrangianSample point(const NeckPoint& pt) const;
    double theta(double y) const { return profile_->theta(y); }
    double dThetaDy(double y) const { return profile_->dThetaDy(y); }
    /// θ(−∞) and θ(+∞) from the profile limits.
    std::pair<double, double> thetaLimits() const;

    /// |dθ/dy + c·α·λ(∂/∂y)| with the analytic derivative of the phase.
    double expanderResidual(double y, double factor = kExpanderPotentialFactor) const;
    JltInvariant invariant(double factor = kExpanderPotentialFactor) const;
    TildeNeck tilde() const { return TildeNeck(profile_); }

private:
    JltParams params_;
    std::shared_ptr<const NeckProfile> profile_;
};

LagrangianSample jlt_point(const JltParams& params, const NeckPoint& pt);
double jlt_expander_residual(const JltParams& params, double y, double factor = kExpanderPotentialFactor);
JltInvariant jlt_invariant_A(const JltParams& params, double factor = kExpanderPotentialFactor);

struct JltTilde {
    TildeNeck neck;
    JltInvariant invariant;
};

/// diag(e^{iφ̃_k})·L^α_{π−φ̃}, angle sum in ((m−1)π, mπ), negative invariant.
JltTilde jlt_tilde(const JltParams& params, double factor = kExpanderPotentialFactor);

struct JltInversion {
    JltParams params;
    NewtonTrace trace;
    double forwardResidual = 0.0;
};

JltInversion jlt_invert(double alpha, const AngleVector& target, const InversionOptions& opts = {});
std::vector<double> jlt_initial_guess(double alpha, const AngleVector& target,
                                      const QuadratureOptions& opts = {0.0, 1e-13, 4000});

}  // namespace slag
