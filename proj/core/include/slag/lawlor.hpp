#pragma once

#include <memory>
#include <vector>

#include "slag/cm_geometry.hpp"
#include "slag/neck_profile.hpp"
#include "slag/newton.hpp"

namespace slag {

struct LawlorParams {
    int m = 3;
    std::vector<double> a;

    static LawlorParams make(std::vector<double> a);
    NeckSpec spec() const { return NeckSpec::make(a, 0.0); }
};

struct LawlorAngles {
    AngleVector phis;
    double A = 0.0;
};

struct NeckPoint {
    double y = 0.0;
    RVector x;

    static NeckPoint make(double y, RVector x);
};

struct RadialProfile {
    std::vector<Complex> z;
    std::vector<double> psi;
};

/// (∏(1 + a_k x²) − 1)/x², with Σa_k at x = 0.
double lawlor_P(const LawlorParams& params, double x);

LawlorAngles lawlor_angles(const LawlorParams& params, const QuadratureOptions& opts = {0.0, 1e-13, 4000});

/// A tabulated special Lagrangian neck L_{φ,A}.
class LawlorNeck {
public:
    explicit LawlorNeck(LawlorParams params, ProfileOptions opts = {});

    const LawlorParams& params() const { return params_; }
    std::shared_ptr<const NeckProfile> profileEngine() const { return profile_; }

    LawlorAngles angles() const;
    RadialProfile profile(double y) const;
    LagrangianSample point(const NeckPoint& pt) const;
    /// f(+∞) − f(−∞) from the cumulative potential table.
    double invariantA() const;
    TildeNeck tilde() const { return TildeNeck(profile_); }

private:
    LawlorParams params_;
    std::shared_ptr<const NeckProfile> profile_;
};

RadialProfile lawlor_profile(const LawlorParams& params, double y);
LagrangianSample lawlor_point(const LawlorParams& params, const NeckPoint& pt);
double lawlor_invariant_A(const LawlorParams& params);

/// diag(e^{iφ_k})·L_{π−φ,A}: angles π − φ(params), sum (m−1)π, invariant −A.
TildeNeck lawlor_tilde(const LawlorParams& params);

struct LawlorInversion {
    LawlorParams params;
    NewtonTrace trace;
    double forwardResidual = 0.0;  // max |φ − target|, |A − A_target|
};

/// Newton on log a_k for the first m−1 angles and log A; Σφ = π closes the system.
LawlorInversion lawlor_invert(const LawlorAngles& target, const InversionOptions& opts = {});

/// Starting point used by lawlor_invert when no guess is supplied.
std::vector<double> lawlor_initial_guess(const LawlorAngles& target, const QuadratureOptions& opts = {0.0, 1e-13, 4000});

}  // namespace slag
