#pragma once

#include <memory>

#include "slag/cm_geometry.hpp"
#include "slag/neck_profile.hpp"
#include "slag/scalar_field.hpp"

namespace slag {

/// Quintic smoothstep S(u) = 10u³ − 15u⁴ + 6u⁵ and its derivative on [0, 1].
double smoothstep5(double u);
double smoothstep5_prime(double u);

/// Chart data for the compactification of C^m along the plane pair (Π₀, Π_φ).
class PlumbingChart {
public:
    /// T > 0 is the inner plateau half-width of the cutoff η.
    static PlumbingChart make(AngleVector phis, double T = 100.0);

    int m() const { return phis_.size(); }
    const AngleVector& phis() const { return phis_; }
    double T() const { return T_; }

    /// −1 for s ≤ −2T, 0 for |s| ≤ T, 1 for s ≥ 2T; odd and C² in between.
    double eta(double s) const;
    double etaPrime(double s) const;

private:
    PlumbingChart(AngleVector phis, double T) : phis_(std::move(phis)), T_(T) {}
    AngleVector phis_;
    double T_;
};

/// x_j = Re z_j − cot φ_j·Im z_j, y_j = Im z_j, so ω = Σdx_j∧dy_j.
struct DarbouxCoords {
    RVector x;
    RVector y;
};

DarbouxCoords to_darboux(const CmPoint& p, const PlumbingChart& chart);
CmPoint from_darboux(const DarbouxCoords& d, const PlumbingChart& chart);
/// A tangent vector of C^m as (dx_1..dx_m, dy_1..dy_m).
RVector darboux_tangent(const CVector& v, const PlumbingChart& chart);

/// 1/log(1 + r²) and its inverse √(e^{1/r̃} − 1).
double sphere_chart_radius(double r);
double sphere_chart_radius_inverse(double rTilde);
/// x̃ = F(r)·x/r. Throws GeometryError at x = 0.
RVector sphere_chart(const RVector& x);
/// Inverse of sphere_chart on x̃ ≠ 0.
RVector sphere_chart_inverse(const RVector& xTilde);

/// f̃(x̃) = f(x) under the chart, with f̃(0) = 0 (the point ∞₀). Requires ρ < 0.
double compactified_graph_value(const ScalarField& f, double rho, const RVector& xTilde);

/// f̃ as a field in the x̃ coordinates (finite-difference derivatives).
class CompactifiedField final : public ScalarField {
public:
    CompactifiedField(FieldPtr f, double rho);
    int dim() const override { return f_->dim(); }
    double value(const Eigen::VectorXd& xTilde) const override { return compactified_graph_value(*f_, rho_, xTilde); }

private:
    FieldPtr f_;
    double rho_;
};

/// h = −½·η(Σx² − Σy²)·Σx_j y_j.
double plumbing_h(const PlumbingChart& chart, const DarbouxCoords& d);

/// λ̃ = λ + dh with λ = ½Σ(x_j dy_j − y_j dx_j), as a covector (dx part, dy part).
RVector liouville_tilde_covector(const PlumbingChart& chart, const DarbouxCoords& d);
/// λ̃(v) for v = (dx, dy).
double liouville_tilde(const PlumbingChart& chart, const DarbouxCoords& d, const RVector& v);

enum class CompactPointKind { Interior, Infinity0, InfinityPhi };

/// f_L + h at interior points, 0 at ∞₀, A at ∞_φ.
double compactified_potential(double fL, double h, CompactPointKind which, double A);

/// Graph function f over Π₀ of the end of a neck asymptotic to Π₀ (y → −∞):
/// the end is {X + i∇f(X)} and f = ½X·∇f − f_L, so f → 0 with f_L.
class NeckEndGraph final : public ScalarField {
public:
    explicit NeckEndGraph(std::shared_ptr<const NeckProfile> neck);
    int dim() const override { return neck_->dim(); }
    double value(const Eigen::VectorXd& X) const override;

    struct Preimage {
        double y = 0.0;
        RVector sphere;  // point of S^{m−1}
        RVector X;       // Re z
        RVector Y;       // Im z, the graph gradient
        double potential = 0.0;
    };
    /// The neck point over X. Throws GeometryError when X lies inside the neck region.
    Preimage preimage(const RVector& X) const;

private:
    std::shared_ptr<const NeckProfile> neck_;
};

}  // namespace slag
