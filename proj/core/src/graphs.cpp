#include "slag/graphs.hpp"

#include <cmath>

#include "slag/errors.hpp"

namespace slag {

PhaseDeterminant phase_determinant(const CMatrix& a) {
    if (a.rows() != a.cols()) throw PreconditionError("determinant of a non-square matrix");
    Eigen::PartialPivLU<CMatrix> lu(a);
    const CMatrix& f = lu.matrixLU();
    PhaseDeterminant out;
    double arg = lu.permutationP().determinant() < 0 ? kPi : 0.0;
    for (Eigen::Index i = 0; i < f.rows(); ++i) {
        const Complex p = f(i, i);
        if (p == Complex(0.0, 0.0)) throw GeometryError("singular matrix in phase_determinant");
        out.logAbs += std::log(std::abs(p));
        arg += std::arg(p);
    }
    arg = std::remainder(arg, 2.0 * kPi);
    if (arg <= -kPi) arg += 2.0 * kPi;
    out.arg = arg;
    return out;
}

PhaseDeterminant graph_phase(const RMatrix& hessian) {
    const Eigen::Index m = hessian.rows();
    CMatrix a = CMatrix::Identity(m, m);
    a += Complex(0.0, 1.0) * hessian.cast<Complex>();
    return phase_determinant(a);
}

double sl_graph_residual(const ScalarField& f, const RVector& x) {
    return graph_phase(f.hessian(x)).value().imag();
}

double expander_graph_residual(const ScalarField& f, double alpha, double c, const RVector& x) {
    const PhaseDeterminant d = graph_phase(f.hessian(x));
    if (kPi - std::abs(d.arg) < 1e-6) throw GeometryError("arg det(I + i Hess f) is at the branch cut");
    return d.arg - alpha * (2.0 * f.value(x) - x.dot(f.gradient(x))) - c;
}

double linearized_expander_operator(const ScalarField& f, double alpha, const RVector& x) {
    return f.laplacian(x) + alpha * (x.dot(f.gradient(x)) - 2.0 * f.value(x));
}

}  // namespace slag
