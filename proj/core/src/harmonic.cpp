#include "slag/harmonic.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "slag/errors.hpp"

namespace slag {

namespace {

double binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

double sphere_monomial_moment(const Exponent& beta) {
    double logNum = 0.0;
    int total = 0;
    for (int b : beta) {
        if (b % 2) return 0.0;
        logNum += std::lgamma(0.5 * (b + 1));
        total += b;
    }
    const int m = static_cast<int>(beta.size());
    return 2.0 * std::exp(logNum - std::lgamma(0.5 * (total + m)));
}

double sphere_inner_product(const Polynomial& p, const Polynomial& q) {
    if (p.nvars() != q.nvars()) throw PreconditionError("polynomials have different variable counts");
    double s = 0.0;
    Exponent sum(static_cast<std::size_t>(p.nvars()));
    for (const auto& [e, c] : p.terms()) {
        for (const auto& [f, d] : q.terms()) {
            for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = e[i] + f[i];
            s += c * d * sphere_monomial_moment(sum);
        }
    }
    return s;
}

int harmonic_dimension(int m, int k) {
    return static_cast<int>(std::lround(binomial(m + k - 1, k) - binomial(m + k - 3, k - 2)));
}

std::vector<Polynomial> harmonic_basis(int m, int k) {
    if (m < 3) throw PreconditionError("harmonic_basis requires m >= 3");
    if (k < 0) throw PreconditionError("harmonic_basis requires k >= 0");

    // Harmonic extension of x₁^ε·q, q a monomial in x₂..x_m:
    // h = Σ_j (−1)^j x₁^{2j+ε} Δ'^j q · ε!/(2j+ε)!, Δ' the Laplacian in x₂..x_m.
    std::vector<Polynomial> raw;
    for (int eps = 0; eps <= std::min(1, k); ++eps) {
        for (const Exponent& rest : monomials_of_degree(m - 1, k - eps)) {
            Exponent e(static_cast<std::size_t>(m), 0);
            for (int i = 1; i < m; ++i) e[static_cast<std::size_t>(i)] = rest[static_cast<std::size_t>(i) - 1];
            Polynomial lap = Polynomial::monomial(e);
            Polynomial h(m);
            double fact = 1.0;  // (2j+ε)!/ε!
            for (int j = 0; !lap.isZero(); ++j) {
                Exponent shift(static_cast<std::size_t>(m), 0);
                shift[0] = 2 * j + eps;
                Polynomial term = lap.timesMonomial(shift);
                term *= ((j % 2) ? -1.0 : 1.0) / fact;
                h += term;
                fact *= (2 * j + eps + 1) * (2 * j + eps + 2);
                Polynomial next(m);
                for (int i = 1; i < m; ++i) next += lap.derivative(i).derivative(i);
                lap = next;
            }
            raw.push_back(h);
        }
    }

    const auto n = static_cast<Eigen::Index>(raw.size());
    Eigen::MatrixXd gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j)
            gram(i, j) = gram(j, i) = sphere_inner_product(raw[static_cast<std::size_t>(i)], raw[static_cast<std::size_t>(j)]);
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) throw GeometryError("harmonic Gram matrix is not positive definite");
    const Eigen::MatrixXd linv = llt.matrixL().solve(Eigen::MatrixXd::Identity(n, n));

    std::vector<Polynomial> basis;
    for (Eigen::Index i = 0; i < n; ++i) {
        Polynomial p(m);
        for (Eigen::Index j = 0; j <= i; ++j) {
            Polynomial t = raw[static_cast<std::size_t>(j)];
            t *= linv(i, j);
            p += t;
        }
        p.prune(0.0);
        basis.push_back(std::move(p));
    }
    return basis;
}

}  // namespace slag
