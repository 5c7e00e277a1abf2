#include "slag/cm_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slag/errors.hpp"

namespace slag {

namespace {

void requireSameDim(const CVector& u, const CVector& v) {
    if (u.size() != v.size())
        throw PreconditionError("dimension mismatch: " + std::to_string(u.size()) + " vs " +
                                std::to_string(v.size()));
}

// Real rank test on the 2m×m real matrix [Re V; Im V].
bool hasFullRealRank(const CMatrix& v) {
    const Eigen::Index m = v.rows(), n = v.cols();
    RMatrix stacked(2 * m, n);
    stacked.topRows(m) = v.real();
    stacked.bottomRows(m) = v.imag();
    Eigen::JacobiSVD<RMatrix> svd(stacked);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return false;
    return s(s.size() - 1) > 1e-12 * s(0);
}

}  // namespace

CmPoint CmPoint::make(CVector coords) {
    if (coords.size() < 3) throw PreconditionError("C^m requires m >= 3");
    return CmPoint{std::move(coords)};
}

bool TangentFrame::isUnitary(double tol) const {
    const Eigen::Index m = vectors.rows();
    if (vectors.cols() != m) return false;
    return (vectors.adjoint() * vectors - CMatrix::Identity(m, m)).cwiseAbs().maxCoeff() <= tol;
}

AngleVector AngleVector::make(std::vector<double> phis) {
    AngleVector out;
    for (double p : phis) {
        if (!(p > 0.0 && p < kPi)) throw PreconditionError("characteristic angles must lie in (0, pi)");
        out.sum_ += p;
    }
    out.phis_ = std::move(phis);
    return out;
}

LagrangianPlane LagrangianPlane::fromUnitary(const CMatrix& u, double tol) {
    if (u.rows() != u.cols() || u.rows() < 1) throw PreconditionError("plane representative must be square");
    const Eigen::Index m = u.rows();
    if ((u.adjoint() * u - CMatrix::Identity(m, m)).cwiseAbs().maxCoeff() > tol)
        throw PreconditionError("plane representative is not unitary");
    LagrangianPlane p;
    p.u_ = u;
    return p;
}

LagrangianPlane LagrangianPlane::fromAngles(const std::vector<double>& phis) {
    const auto m = static_cast<Eigen::Index>(phis.size());
    CMatrix u = CMatrix::Zero(m, m);
    for (Eigen::Index k = 0; k < m; ++k) u(k, k) = std::polar(1.0, phis[static_cast<std::size_t>(k)]);
    LagrangianPlane p;
    p.u_ = u;
    return p;
}

LagrangianPlane LagrangianPlane::real(int m) {
    LagrangianPlane p;
    p.u_ = CMatrix::Identity(m, m);
    return p;
}

double symplectic_form(const CVector& u, const CVector& v) {
    requireSameDim(u, v);
    double s = 0.0;
    for (Eigen::Index j = 0; j < u.size(); ++j) s += std::imag(std::conj(u(j)) * v(j));
    return s;
}

double metric(const CVector& u, const CVector& v) {
    requireSameDim(u, v);
    return u.dot(v).real();
}

CVector complex_structure(const CVector& v) { return Complex(0.0, 1.0) * v; }

double liouville_form(const CmPoint& p, const CVector& v) {
    requireSameDim(p.coords, v);
    double s = 0.0;
    for (Eigen::Index j = 0; j < v.size(); ++j) s += std::imag(p.coords(j) * std::conj(v(j)));
    return -0.5 * s;
}

Complex holomorphic_volume(const TangentFrame& frame) {
    const CMatrix& v = frame.vectors;
    if (v.rows() != v.cols()) throw PreconditionError("frame must have m vectors in C^m");
    if (!hasFullRealRank(v)) throw GeometryError("degenerate frame (real rank < m)");
    return v.partialPivLu().determinant();
}

double max_omega_residual(const CMatrix& vectors) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < vectors.cols(); ++i) {
        for (Eigen::Index j = i + 1; j < vectors.cols(); ++j) {
            const double scale = vectors.col(i).norm() * vectors.col(j).norm();
            if (scale == 0.0) continue;
            worst = std::max(worst, std::abs(symplectic_form(vectors.col(i), vectors.col(j))) / scale);
        }
    }
    return worst;
}

double nearest_branch(double angle, double hint) {
    const double twoPi = 2.0 * kPi;
    return angle + twoPi * std::round((hint - angle) / twoPi);
}

double phase_of_frame(const TangentFrame& frame, double branchHint) {
    const Complex omega = holomorphic_volume(frame);
    if (max_omega_residual(frame.vectors) > 1e-8) throw GeometryError("frame is not Lagrangian");
    return nearest_branch(std::arg(omega), branchHint);
}

AngleVector characteristic_angles(const LagrangianPlane& a, const LagrangianPlane& b) {
    if (a.dim() != b.dim()) throw PreconditionError("planes live in different dimensions");
    const Eigen::Index m = a.dim();
    const CMatrix w = a.unitary().adjoint() * b.unitary();
    const CMatrix s = w * w.transpose();

    // S = X + iY with X, Y real symmetric and commuting: diagonalize a generic
    // combination, then split any eigenvalue cluster of it with Y.
    const RMatrix x = 0.5 * (s.real() + s.real().transpose());
    const RMatrix y = 0.5 * (s.imag() + s.imag().transpose());
    constexpr double gamma = 0.6180339887498949;
    Eigen::SelfAdjointEigenSolver<RMatrix> es(x + gamma * y);
    RMatrix o = es.eigenvectors();
    const RVector& ev = es.eigenvalues();

    Eigen::Index start = 0;
    while (start < m) {
        Eigen::Index end = start + 1;
        while (end < m && ev(end) - ev(end - 1) < 1e-8) ++end;
        if (end - start > 1) {
            const RMatrix block = o.middleCols(start, end - start);
            const RMatrix sub = block.transpose() * y * block;
            Eigen::SelfAdjointEigenSolver<RMatrix> inner(0.5 * (sub + sub.transpose()));
            o.middleCols(start, end - start) = block * inner.eigenvectors();
        }
        start = end;
    }

    const RMatrix dx = o.transpose() * x * o;
    const RMatrix dy = o.transpose() * y * o;
    std::vector<double> phis(static_cast<std::size_t>(m));
    for (Eigen::Index k = 0; k < m; ++k) {
        double arg = std::atan2(dy(k, k), dx(k, k));
        if (arg < 0.0) arg += 2.0 * kPi;
        const double phi = 0.5 * arg;
        if (phi < kTransversalityTol || phi > kPi - kTransversalityTol)
            throw GeometryError("planes are not transverse");
        phis[static_cast<std::size_t>(k)] = phi;
    }
    std::sort(phis.begin(), phis.end());
    return AngleVector::make(std::move(phis));
}

int maslov_degree(const AngleVector& angles, const GradedPointPair& pair) {
    const double v = (angles.sum() + pair.thetaL - pair.thetaLprime) / kPi;
    const double n = std::round(v);
    if (std::abs(v - n) > 1e-6)
        throw PreconditionError("inconsistent grading: degree " + std::to_string(v) + " is not an integer");
    return static_cast<int>(n);
}

bool degree_window_check(const GradedPointPair& pair, int mu, double alpha, int m, double factor) {
    if (alpha < 0.0) throw PreconditionError("alpha must be non-negative");
    if (alpha == 0.0) return 0 < mu && mu < m;
    const double scale = factor * alpha;
    if (std::abs(pair.fL + pair.thetaL / scale) > 1e-6 || std::abs(pair.fLprime + pair.thetaLprime / scale) > 1e-6)
        throw PreconditionError("potentials inconsistent with phases for this alpha");
    const double lower = scale / kPi * (pair.fLprime - pair.fL);
    return lower < mu && mu < lower + m;
}

double strip_area(const GradedPointPair& atP, const GradedPointPair& atQ) {
    return atQ.fL - atP.fL + atP.fLprime - atQ.fLprime;
}

CMatrix gram_schmidt_real(const CMatrix& vectors) {
    CMatrix q = vectors;
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const double original = q.col(j).norm();
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)).real() * q.col(i);
        }
        const double n = q.col(j).norm();
        if (!(n > 1e-13 * std::max(original, 1e-300))) throw GeometryError("degenerate frame in Gram-Schmidt");
        q.col(j) /= n;
    }
    return q;
}

}  // namespace slag
