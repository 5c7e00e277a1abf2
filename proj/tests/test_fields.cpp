#include <cmath>
#include <map>

#include <Eigen/LU>

#include "doctest.h"
#include "slag/errors.hpp"
#include "slag/graphs.hpp"
#include "slag/harmonic.hpp"
#include "slag/polynomial.hpp"
#include "slag/scalar_field.hpp"
#include "support.hpp"

using namespace slag;

namespace {

Polynomial randomPolynomial(test::Rng& g, int m, int maxDegree) {
    std::normal_distribution<double> n;
    Polynomial p(m);
    for (int d = 0; d <= maxDegree; ++d)
        for (const auto& e : monomials_of_degree(m, d)) p.addTerm(e, n(g));
    return p;
}

/// dim ker(Δ: P_k → P_{k−2}) from the rank of the coefficient matrix.
int harmonicDimensionByRank(int m, int k) {
    const auto dom = monomials_of_degree(m, k);
    if (k < 2) return static_cast<int>(dom.size());
    const auto cod = monomials_of_degree(m, k - 2);
    std::map<Exponent, int> row;
    for (std::size_t i = 0; i < cod.size(); ++i) row[cod[i]] = static_cast<int>(i);
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cod.size()), static_cast<Eigen::Index>(dom.size()));
    for (std::size_t j = 0; j < dom.size(); ++j) {
        const Polynomial l = Polynomial::monomial(dom[j]).laplacian();
        for (const auto& [e, c] : l.terms()) lap(row.at(e), static_cast<Eigen::Index>(j)) = c;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(lap);
    return static_cast<int>(dom.size()) - static_cast<int>(lu.rank());
}

}  // namespace

TEST_SUITE("polynomial") {
    TEST_CASE("arithmetic and evaluation") {
        Polynomial p(2);
        p.addTerm({2, 0}, 1.0);
        p.addTerm({0, 2}, -1.0);
        Eigen::VectorXd x(2);
        x << 3.0, 2.0;
        CHECK(p(x) == 5.0);
        CHECK(p.laplacian().isZero());
        CHECK(p.isHomogeneous(2));
        CHECK((p * p).degree() == 4);
        CHECK(p.derivative(0).coefficient({1, 0}) == 2.0);
        CHECK(monomials_of_degree(3, 2).size() == 6);
    }
}

TEST_SUITE("harmonic") {
    TEST_CASE("dimension against Laplacian rank") {
        for (int m = 3; m <= 5; ++m)
            for (int k = 0; k <= 6; ++k) {
                CHECK(harmonic_dimension(m, k) == harmonicDimensionByRank(m, k));
                CHECK(static_cast<int>(harmonic_basis(m, k).size()) == harmonic_dimension(m, k));
            }
        CHECK(harmonic_basis(3, 2).size() == 5);
    }

    TEST_CASE("basis is harmonic, homogeneous and orthonormal") {
        for (int m = 3; m <= 4; ++m)
            for (int k = 0; k <= 4; ++k) {
                const auto b = harmonic_basis(m, k);
                for (std::size_t i = 0; i < b.size(); ++i) {
                    Polynomial l = b[i].laplacian();
                    l.prune(1e-12);
                    CHECK(l.isZero());
                    CHECK(b[i].isHomogeneous(k));
                    for (std::size_t j = 0; j < b.size(); ++j)
                        CHECK(std::abs(sphere_inner_product(b[i], b[j]) - (i == j ? 1.0 : 0.0)) < 1e-10);
                }
            }
    }

    TEST_CASE("low degrees") {
        const auto b0 = harmonic_basis(3, 0);
        REQUIRE(b0.size() == 1);
        CHECK(b0[0].degree() == 0);
        for (const auto& p : harmonic_basis(4, 1)) CHECK(p.isHomogeneous(1));
        // |S²| = 4π.
        CHECK(sphere_monomial_moment({0, 0, 0}) == doctest::Approx(4.0 * kPi));
        CHECK(sphere_monomial_moment({1, 0, 0}) == 0.0);
        CHECK(sphere_monomial_moment({2, 0, 0}) == doctest::Approx(4.0 * kPi / 3.0));
    }
}

TEST_SUITE("scalar fields") {
    TEST_CASE("polynomial derivatives against finite differences") {
        auto g = test::rng(31);
        const PolynomialField f(randomPolynomial(g, 3, 4));
        for (int i = 0; i < 10; ++i) {
            const RVector x = 1.5 * test::sphere_point(g, 3);
            CHECK((f.gradient(x) - fd_gradient(f, x, 1e-3)).cwiseAbs().maxCoeff() < 1e-8);
            CHECK((f.hessian(x) - fd_hessian(f, x, 1e-3)).cwiseAbs().maxCoeff() < 1e-6);
        }
    }

    TEST_CASE("radial power") {
        const RadialPowerField f(3, -1.0, 2.0);
        RVector x(3);
        x << 1.0, 2.0, 2.0;
        CHECK(f.value(x) == doctest::Approx(2.0 / 3.0));
        // r^{2−m} is harmonic.
        CHECK(std::abs(f.laplacian(x)) < 1e-14);
        CHECK((f.hessian(x) - fd_hessian(f, x, 1e-3)).cwiseAbs().maxCoeff() < 1e-8);
    }

    TEST_CASE("inversion of a constant") {
        const auto F = std::make_shared<PolynomialField>(Polynomial::constant(4, 3.0));
        const auto f = inversion_transform(F, 4, InversionDirection::Forward);
        auto g = test::rng(32);
        for (int i = 0; i < 10; ++i) {
            const RVector x = 0.7 * test::sphere_point(g, 4);
            CHECK(std::abs(f->value(x) - 3.0 * std::pow(0.7, -2.0)) < 1e-13);
        }
    }

    TEST_CASE("inversion round trip") {
        auto g = test::rng(33);
        for (int m = 3; m <= 5; ++m) {
            const auto F = std::make_shared<PolynomialField>(randomPolynomial(g, m, 3));
            const auto back =
                inversion_transform(inversion_transform(F, m, InversionDirection::Forward), m, InversionDirection::Backward);
            for (int i = 0; i < 100; ++i) {
                const RVector x = std::uniform_real_distribution<double>(0.3, 3.0)(g) * test::sphere_point(g, m);
                CHECK(std::abs(back->value(x) - F->value(x)) < 1e-10 * std::max(1.0, std::abs(F->value(x))));
            }
        }
    }

    TEST_CASE("Laplacian under inversion") {
        auto g = test::rng(34);
        for (int m = 3; m <= 5; ++m) {
            const auto F = std::make_shared<PolynomialField>(randomPolynomial(g, m, 3));
            const auto f = inversion_transform(F, m, InversionDirection::Forward);
            for (int i = 0; i < 30; ++i) {
                const RVector y = std::uniform_real_distribution<double>(0.5, 2.0)(g) * test::sphere_point(g, m);
                const double s = y.norm();
                const RVector x = y / (s * s);
                const double rhs = std::pow(s, m + 2) * F->laplacian(y);
                const double scale = std::max(1.0, std::abs(rhs));
                CHECK(std::abs(f->laplacian(x) - rhs) < 1e-9 * scale);
                CHECK(std::abs(fd_hessian(*f, x, ScalarField::fdStep(x)).trace() - rhs) < 1e-5 * scale);
            }
        }
    }

    TEST_CASE("dimension mismatch") {
        const auto F = std::make_shared<PolynomialField>(Polynomial::constant(3, 1.0));
        CHECK_THROWS_AS(inversion_transform(F, 4, InversionDirection::Forward), PreconditionError);
    }
}

TEST_SUITE("graphs") {
    TEST_CASE("special Lagrangian graph residual") {
        const FunctionField zero(3, [](const Eigen::VectorXd&) { return 0.0; });
        RVector x(3);
        x << 0.3, -1.0, 2.0;
        CHECK(sl_graph_residual(zero, x) == 0.0);
        Polynomial p(3);
        p.addTerm({2, 0, 0}, 0.5);
        p.addTerm({0, 2, 0}, -0.5);
        CHECK(std::abs(sl_graph_residual(PolynomialField(p), x)) < 1e-15);
    }

    TEST_CASE("graph phase against a direct complex determinant") {
        auto g = test::rng(35);
        for (int i = 0; i < 30; ++i) {
            const int m = 3 + i % 3;
            const PolynomialField f(randomPolynomial(g, m, 3));
            const RVector x = test::sphere_point(g, m);
            const RMatrix h = f.hessian(x);
            const Complex direct = (CMatrix::Identity(m, m) + Complex(0.0, 1.0) * h.cast<Complex>()).determinant();
            const PhaseDeterminant d = graph_phase(h);
            CHECK(std::abs(d.value() - direct) < 1e-10 * std::abs(direct));
            CHECK(std::abs(sl_graph_residual(f, x) - direct.imag()) < 1e-10 * std::abs(direct));
        }
    }

    TEST_CASE("expander residual") {
        const FunctionField zero(3, [](const Eigen::VectorXd&) { return 0.0; });
        RVector x(3);
        x << 1.0, 2.0, 3.0;
        CHECK(expander_graph_residual(zero, 1.0, 0.0, x) == 0.0);
        // α = 0: constant phase condition.
        Polynomial p(3);
        p.addTerm({2, 0, 0}, 0.5);
        p.addTerm({0, 2, 0}, -0.5);
        CHECK(std::abs(expander_graph_residual(PolynomialField(p), 0.0, 0.0, x)) < 1e-15);
    }

    TEST_CASE("linearization at f = 0") {
        auto g = test::rng(36);
        const Polynomial q = randomPolynomial(g, 3, 3);
        const PolynomialField gfield(q);
        const double alpha = 0.8;
        for (int i = 0; i < 10; ++i) {
            const RVector x = test::sphere_point(g, 3);
            const double lin = linearized_expander_operator(gfield, alpha, x);
            double prevErr = INFINITY;
            for (double eps : {1e-3, 1e-4}) {
                const PolynomialField f(eps * q);
                const double err = std::abs(expander_graph_residual(f, alpha, 0.0, x) / eps - lin);
                CHECK(err < 50.0 * eps * eps * (1.0 + std::abs(lin)));
                CHECK(err < prevErr);
                prevErr = err;
            }
        }
    }
}
