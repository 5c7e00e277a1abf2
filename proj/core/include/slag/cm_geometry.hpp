#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace slag {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

constexpr double kPi = 3.14159265358979323846;

/// Coefficient c in the expander relation dθ = −c·α·λ|_L (potential f = −θ/(cα)).
/// With λ = −½ Im Σ z_j dz̄_j one has ι_F ω = 2λ, hence c = 2 for H = αF^⊥.
inline constexpr double kExpanderPotentialFactor = 2.0;

/// Angles closer than this to 0 or π make a plane pair non-transverse.
inline constexpr double kTransversalityTol = 1e-8;

struct CmPoint {
    CVector coords;

    static CmPoint make(CVector coords);
    int dim() const { return static_cast<int>(coords.size()); }
};

/// Columns of `vectors` are tangent vectors at `base`.
struct TangentFrame {
    CmPoint base;
    CMatrix vectors;

    bool isUnitary(double tol = 1e-10) const;
};

class AngleVector {
public:
    /// Each φ_k must lie in (0, π); the sum is unconstrained.
    static AngleVector make(std::vector<double> phis);

    const std::vector<double>& phis() const { return phis_; }
    double operator[](std::size_t k) const { return phis_[k]; }
    int size() const { return static_cast<int>(phis_.size()); }
    double sum() const { return sum_; }

private:
    std::vector<double> phis_;
    double sum_ = 0.0;
};

/// A Lagrangian plane U·R^m stored through a unitary representative.
class LagrangianPlane {
public:
    static LagrangianPlane fromUnitary(const CMatrix& u, double tol = 1e-12);
    /// Π_φ = diag(e^{iφ_k})·R^m.
    static LagrangianPlane fromAngles(const std::vector<double>& phis);
    static LagrangianPlane real(int m);

    const CMatrix& unitary() const { return u_; }
    int dim() const { return static_cast<int>(u_.rows()); }

private:
    CMatrix u_;
};

struct GradedPointPair {
    double thetaL = 0.0;
    double thetaLprime = 0.0;
    double fL = 0.0;
    double fLprime = 0.0;
};

/// One point of a Lagrangian together with its grading data.
struct LagrangianSample {
    CmPoint point;
    TangentFrame frame;  // orthonormal, oriented
    CVector dPoint;      // ∂/∂y of the parametrization (unnormalized)
    double y = 0.0;
    double theta = 0.0;
    double potential = 0.0;
};

double symplectic_form(const CVector& u, const CVector& v);
double metric(const CVector& u, const CVector& v);
CVector complex_structure(const CVector& v);
double liouville_form(const CmPoint& p, const CVector& v);
Complex holomorphic_volume(const TangentFrame& frame);

/// θ with e^{iθ} = Ω(frame)/|Ω(frame)|, on the branch nearest `branchHint`.
double phase_of_frame(const TangentFrame& frame, double branchHint);

/// Lift of `angle` (any representative) nearest to `hint`.
double nearest_branch(double angle, double hint);

AngleVector characteristic_angles(const LagrangianPlane& a, const LagrangianPlane& b);

/// (Σφ + θ_L − θ_{L'})/π, required to be within 1e−6 of an integer.
int maslov_degree(const AngleVector& angles, const GradedPointPair& pair);

/// α = 0: 0 < μ < m. α > 0: (cα/π)(f_{L'} − f_L) < μ < (cα/π)(f_{L'} − f_L) + m,
/// after checking f = −θ/(cα) on both sheets within 1e−6.
bool degree_window_check(const GradedPointPair& pair, int mu, double alpha, int m,
                         double factor = kExpanderPotentialFactor);

double strip_area(const GradedPointPair& atP, const GradedPointPair& atQ);

/// Columns orthonormalized for the real inner product Re⟨u,v⟩.
CMatrix gram_schmidt_real(const CMatrix& vectors);

/// Largest |ω(v_i, v_j)| over column pairs, each pair scaled by |v_i||v_j|.
double max_omega_residual(const CMatrix& vectors);

}  // namespace slag
