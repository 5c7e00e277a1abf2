#pragma once

#include "slag/cm_geometry.hpp"
#include "slag/scalar_field.hpp"

namespace slag {

/// det of a complex matrix as modulus (log) and principal argument, the
/// argument accumulated from the LU pivots and the permutation sign.
struct PhaseDeterminant {
    double logAbs = 0.0;
    double arg = 0.0;  // in (−π, π]
    Complex value() const { return std::polar(std::exp(logAbs), arg); }
};

PhaseDeterminant phase_determinant(const CMatrix& a);

/// det_C(I + i·H) for a real symmetric H.
PhaseDeterminant graph_phase(const RMatrix& hessian);

/// Im det_C(I + i·Hess f(x)).
double sl_graph_residual(const ScalarField& f, const RVector& x);

/// arg det_C(I + i·Hess f) − α(2f − Σx_j ∂_j f) − c. Throws GeometryError when
/// the argument lies within 1e−6 of the branch cut at ±π.
double expander_graph_residual(const ScalarField& f, double alpha, double c, const RVector& x);

/// Δf + α(Σx_j ∂_j f − 2f), the linearization of the expander graph equation at f = 0.
double linearized_expander_operator(const ScalarField& f, double alpha, const RVector& x);

}  // namespace slag
