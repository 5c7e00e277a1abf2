#pragma once

#include <vector>

#include "slag/polynomial.hpp"

namespace slag {

/// ∫_{S^{m−1}} x^β dσ = 2∏Γ((β_i+1)/2)/Γ((|β|+m)/2), zero if any β_i is odd.
double sphere_monomial_moment(const Exponent& beta);

/// L²(S^{m−1}) inner product of two polynomials.
double sphere_inner_product(const Polynomial& p, const Polynomial& q);

/// C(m+k−1, k) − C(m+k−3, k−2).
int harmonic_dimension(int m, int k);

/// Basis of homogeneous harmonic polynomials of degree k on R^m, orthonormal in L²(S^{m−1}).
std::vector<Polynomial> harmonic_basis(int m, int k);

}  // namespace slag
