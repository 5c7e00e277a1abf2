#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "slag/ode.hpp"
#include "slag/polynomial.hpp"
#include "slag/scalar_field.hpp"

namespace slag {

/// Radial weight r^{−w} in front of e^{−αr²/2}·p_k(x/r)·A_k(r^{−2}).
/// RPowMinusMMinus1 (w = m+1) pairs with 4t²A″ + 2(α+(m+6)t)A′ + (3(m+1) − k(m+k−2))A = 0.
/// RPowMinusMMinus2 (w = m+2) pairs with 4t²A″ + 2(α+(m+8)t)A′ + (4(m+2) − k(m+k−2))A = 0,
/// the combination that solves Δf + α(x·∇f − 2f) = 0 exactly.
enum class ModeWeight { RPowMinusMMinus1, RPowMinusMMinus2 };

/// 4t²A″ + 2(α + b·t)A′ + κA = 0 with A(0) = 1.
struct RadialOde {
    int m = 3;
    int k = 0;
    double alpha = 1.0;
    double b = 0.0;
    double kappa = 0.0;
    ModeWeight weight = ModeWeight::RPowMinusMMinus1;

    int weightExponent() const { return weight == ModeWeight::RPowMinusMMinus1 ? m + 1 : m + 2; }
    /// A″ from (t, A, A′); t > 0.
    double secondDerivative(double t, double a, double ap) const;
};

RadialOde radial_ode(int m, int k, double alpha, ModeWeight weight = ModeWeight::RPowMinusMMinus1);

/// Taylor coefficients c_0..c_{n−1} from 2α(l+1)c_{l+1} = −[4l(l−1) + 2bl + κ]c_l, c_0 = 1.
std::vector<double> radial_taylor(const RadialOde& ode, int n);

struct AkOptions {
    int maxTerms = 400;
    /// The series counts as converged at t when its smallest term is below this (relative).
    double seriesTol = 1e-14;
    double overlapTol = 1e-8;
    int overlapPoints = 9;
    int maxHalvings = 20;
    OdeOptions ode{};
};

/// A_k on [0, T]: asymptotic series on [0, tStart], Dormand-Prince continuation beyond.
class AkRecord {
public:
    RadialOde ode;
    std::vector<double> taylor;
    double t0 = 0.0;      // series/RK overlap is [t0/2, t0]
    double tStart = 0.0;  // RK starts here from series values
    double T = 0.0;
    std::vector<double> nodes;
    std::vector<Eigen::Vector2d> states;  // (A, A′) at nodes
    double overlapDiscrepancy = 0.0;
    OdeOptions odeOptions{};

    double value(double t) const { return eval(t)(0); }
    double derivative(double t) const { return eval(t)(1); }
    double secondDerivative(double t) const;
    /// Optimally truncated series value / derivative.
    double seriesValue(double t) const;
    double seriesDerivative(double t) const;
    /// (A, A′) at t ≥ 0.
    Eigen::Vector2d eval(double t) const;
};

/// Solves the radial ODE for degree k on [0, T]. Throws ConvergenceError when the
/// series/RK overlap exceeds opts.overlapTol after all t0 halvings.
AkRecord solve_Ak(int m, int k, double alpha, double T, ModeWeight weight = ModeWeight::RPowMinusMMinus1,
                  const AkOptions& opts = {});

/// 0 ≤ A′/A ≤ −κ/(2α) at every grid point within slack. Requires κ < 0.
bool check_Ak_log_derivative_bound(const AkRecord& rec, const std::vector<double>& tGrid, double slack = 1e-9);

struct ExpansionMode {
    int k = 0;
    Polynomial poly;
    std::shared_ptr<const AkRecord> Ak;
};

/// r^{−w}e^{−αr²/2}·Σ p_k(x/r)·A_k(r^{−2}) with w from each mode's weight.
double assemble_expansion(const std::vector<ExpansionMode>& modes, const Eigen::VectorXd& x);

/// The assembled expansion as a field with analytic gradient and Hessian.
class ExpansionField final : public ScalarField {
public:
    ExpansionField(int m, std::vector<ExpansionMode> modes);
    int dim() const override { return m_; }
    double value(const Eigen::VectorXd& x) const override;
    Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override;
    Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override;
    bool analytic() const override { return true; }

private:
    struct Term {
        ExpansionMode mode;
        PolynomialField poly;
    };
    int m_;
    std::vector<Term> terms_;
};

}  // namespace slag
