#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "doctest.h"
#include "slag/errors.hpp"
#include "slag/jlt.hpp"
#include "slag/lawlor.hpp"
#include "support.hpp"

using namespace slag;

namespace {

/// (e^{αx²}∏(1 + a_k x²) − 1)/x² via expm1, with the x → 0 limit.
double oracleP(const std::vector<double>& a, double alpha, double x) {
    if (x * x == 0.0) {
        double s = alpha;
        for (double ak : a) s += ak;
        return s;
    }
    double logProd = alpha * x * x;
    for (double ak : a) logProd += std::log1p(ak * x * x);
    const double v = std::expm1(logProd) / (x * x);
    return std::isnan(v) ? INFINITY : v;
}

/// Full-line φ_k and A from the even integrands, by exp-sinh on [0, ∞).
std::vector<double> oracleTotals(const std::vector<double>& a, double alpha) {
    boost::math::quadrature::exp_sinh<double> es;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> out;
    for (double ak : a)
        out.push_back(2.0 * es.integrate([&](double x) { return ak / ((1.0 + ak * x * x) * std::sqrt(oracleP(a, alpha, x))); },
                                         0.0, inf, 1e-15));
    out.push_back(2.0 * es.integrate([&](double x) { return 0.5 / std::sqrt(oracleP(a, alpha, x)); }, 0.0, inf, 1e-15));
    return out;
}

/// ψ_k(y) and f(y) as half the total plus ∫_0^y.
std::vector<double> oracleCumulative(const std::vector<double>& a, double alpha, double y) {
    boost::math::quadrature::tanh_sinh<double> ts;
    std::vector<double> tot = oracleTotals(a, alpha), out;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double ak = a[k];
        out.push_back(0.5 * tot[k] +
                      ts.integrate([&](double x) { return ak / ((1.0 + ak * x * x) * std::sqrt(oracleP(a, alpha, x))); }, 0.0, y));
    }
    out.push_back(0.5 * tot.back() + ts.integrate([&](double x) { return 0.5 / std::sqrt(oracleP(a, alpha, x)); }, 0.0, y));
    return out;
}

}  // namespace

TEST_SUITE("lawlor") {
    TEST_CASE("P polynomial") {
        const LawlorParams p = LawlorParams::make({1.0, 1.0, 1.0});
        CHECK(lawlor_P(p, 0.0) == doctest::Approx(3.0).epsilon(1e-15));
        CHECK(lawlor_P(p, 1.0) == doctest::Approx(7.0).epsilon(1e-15));
        const LawlorParams q = LawlorParams::make({0.5, 2.0, 3.0, 1.5});
        for (double x : {1e-6, 0.3, 2.0, 50.0}) CHECK(std::abs(lawlor_P(q, x) / oracleP(q.a, 0.0, x) - 1.0) < 1e-13);
        // Leading term e_m x^{2m−2}.
        const double x = 1e4;
        CHECK(std::abs(lawlor_P(q, x) / (4.5 * std::pow(x, 6)) - 1.0) < 1e-6);
    }

    TEST_CASE("invalid parameters") {
        CHECK_THROWS_AS(LawlorParams::make({1.0, -1.0, 1.0}), PreconditionError);
        CHECK_THROWS_AS(LawlorParams::make({1.0, 1.0}), PreconditionError);
        CHECK_THROWS_WITH(LawlorParams::make({1.0, 0.0, 1.0}), "a_k must be positive");
    }

    TEST_CASE("symmetric angles") {
        const LawlorAngles l = lawlor_angles(LawlorParams::make({1.0, 1.0, 1.0}));
        for (int k = 0; k < 3; ++k) CHECK(std::abs(l.phis[static_cast<std::size_t>(k)] - kPi / 3) < 1e-12);
    }

    TEST_CASE("angles and invariant against exp-sinh") {
        for (const auto& a : std::vector<std::vector<double>>{{1.0, 1.0, 4.0}, {1.0, 2.0, 3.0}, {0.3, 0.7, 2.5, 3.9}}) {
            const LawlorAngles l = lawlor_angles(LawlorParams::make(a));
            const std::vector<double> ref = oracleTotals(a, 0.0);
            for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(l.phis[k] - ref[k]) < 1e-9);
            CHECK(std::abs(l.A - ref.back()) < 1e-9);
            CHECK(std::abs(l.phis.sum() - kPi) < 1e-10);
            CHECK(std::abs(lawlor_invariant_A(LawlorParams::make(a)) - ref.back()) < 1e-9);
        }
    }

    TEST_CASE("scaling law a -> s a") {
        const std::vector<double> a = {0.7, 1.3, 2.2};
        const LawlorAngles l = lawlor_angles(LawlorParams::make(a));
        for (double s : {0.1, 3.0, 40.0}) {
            std::vector<double> b = a;
            for (double& v : b) v *= s;
            const LawlorAngles m = lawlor_angles(LawlorParams::make(b));
            CHECK(test::max_abs_diff(l.phis.phis(), m.phis.phis()) < 1e-11);
            CHECK(std::abs(m.A * s - l.A) < 1e-10 * l.A);
        }
    }

    TEST_CASE("radial profile") {
        const LawlorNeck neck(LawlorParams::make({1.0, 1.0, 1.0}));
        const RadialProfile r0 = neck.profile(0.0);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(r0.psi[static_cast<std::size_t>(k)] - kPi / 6) < 1e-12);

        RVector e1 = RVector::Zero(3);
        e1(0) = 1.0;
        const LagrangianSample s = neck.point(NeckPoint::make(0.0, e1));
        CHECK(std::abs(s.point.coords(0) - std::polar(1.0, kPi / 6)) < 1e-12);
        CHECK(std::abs(s.point.coords(1)) == 0.0);

        const std::vector<double> a = {1.0, 2.0, 3.0};
        const LawlorNeck n2(LawlorParams::make(a));
        for (double y : {-5.0, -0.4, 1.0, 7.0}) {
            const std::vector<double> ref = oracleCumulative(a, 0.0, y);
            const RadialProfile r = n2.profile(y);
            for (std::size_t k = 0; k < 3; ++k) {
                CHECK(std::abs(r.psi[k] - ref[k]) < 1e-9);
                CHECK(std::abs(std::abs(r.z[k]) - std::sqrt(1.0 / a[k] + y * y)) < 1e-13);
            }
        }
        // Asymptotic to Π₀ as y → −∞.
        const RadialProfile far = n2.profile(-1e6);
        for (const Complex& z : far.z) CHECK(std::abs(std::arg(z)) < 1e-5);
    }

    TEST_CASE("special Lagrangian residuals") {
        auto g = test::rng(11);
        const LawlorNeck neck(LawlorParams::make({0.4, 1.9, 3.1, 0.8}));
        std::uniform_real_distribution<double> u(-4.0, 4.0);
        for (int i = 0; i < 100; ++i) {
            const LagrangianSample s = neck.point(NeckPoint::make(std::sinh(u(g)), test::sphere_point(g, 4)));
            CHECK(max_omega_residual(s.frame.vectors) < 1e-8);
            CHECK(std::abs(holomorphic_volume(s.frame).imag()) < 1e-8);
            CHECK(std::abs(s.theta) < 1e-12);
        }
    }

    TEST_CASE("potential is a primitive of the Liouville form") {
        const LawlorNeck neck(LawlorParams::make({1.0, 2.0, 3.0}));
        auto g = test::rng(12);
        const RVector x = test::sphere_point(g, 3);
        for (double y : {-3.0, -0.5, 0.0, 0.7, 4.0}) {
            const double h = 1e-4;
            const double df = (neck.point(NeckPoint::make(y + h, x)).potential -
                               neck.point(NeckPoint::make(y - h, x)).potential) / (2.0 * h);
            const LagrangianSample s = neck.point(NeckPoint::make(y, x));
            CHECK(std::abs(df - liouville_form(s.point, s.dPoint)) < 1e-8);
        }
    }

    TEST_CASE("invariant from potential limits") {
        auto g = test::rng(13);
        for (int i = 0; i < 5; ++i) {
            const LawlorNeck neck(LawlorParams::make(test::neck_parameters(g, 3 + i % 3)));
            CHECK(std::abs(neck.invariantA() - neck.angles().A) < 1e-8);
            CHECK(neck.invariantA() > 0.0);
        }
    }

    TEST_CASE("tilde neck") {
        const std::vector<double> a = {1.0, 2.0, 3.0};
        const TildeNeck t = lawlor_tilde(LawlorParams::make(a));
        CHECK(std::abs(t.sumPhi() - 2.0 * kPi) < 1e-10);
        CHECK(std::abs(t.invariant() + lawlor_angles(LawlorParams::make(a)).A) < 1e-12);
        // Pointwise rotation of the base neck.
        const LawlorNeck base(LawlorParams::make(a));
        auto g = test::rng(14);
        for (int i = 0; i < 20; ++i) {
            const RVector x = test::sphere_point(g, 3);
            const double y = std::sinh(std::uniform_real_distribution<double>(-3.0, 3.0)(g));
            const LagrangianSample s = t.sample(y, x), b = base.point(NeckPoint::make(y, x));
            for (int k = 0; k < 3; ++k)
                CHECK(std::abs(s.point.coords(k) - std::polar(1.0, t.phis()[static_cast<std::size_t>(k)]) * b.point.coords(k)) < 1e-13);
            CHECK(max_omega_residual(s.frame.vectors) < 1e-8);
        }
    }
}

TEST_SUITE("lawlor inversion") {
    TEST_CASE("symmetric target gives equal components") {
        LawlorAngles target{AngleVector::make({kPi / 3, kPi / 3, kPi / 3}), 1.0};
        const LawlorInversion inv = lawlor_invert(target);
        CHECK(std::abs(inv.params.a[0] - inv.params.a[1]) < 1e-10);
        CHECK(std::abs(inv.params.a[1] - inv.params.a[2]) < 1e-10);
        CHECK(std::abs(lawlor_angles(inv.params).A - 1.0) < 1e-8);
    }

    TEST_CASE("round trips") {
        auto g = test::rng(15);
        for (int i = 0; i < 6; ++i) {
            const std::vector<double> a = test::neck_parameters(g, 3 + i % 3);
            const LawlorInversion inv = lawlor_invert(lawlor_angles(LawlorParams::make(a)));
            CHECK(inv.trace.converged);
            CHECK(inv.trace.iterations <= 30);
            CHECK(test::max_abs_diff(inv.params.a, a) < 1e-6);
        }
    }

    TEST_CASE("preconditions") {
        CHECK_THROWS_AS(lawlor_invert({AngleVector::make({1.0, 1.0, 1.0}), 1.0}), PreconditionError);
        CHECK_THROWS_AS(lawlor_invert({AngleVector::make({kPi / 3, kPi / 3, kPi / 3}), -1.0}), PreconditionError);
    }
}

TEST_SUITE("expander") {
    TEST_CASE("P with the Gaussian factor") {
        const JltParams p = JltParams::make(1.0, {1.0, 1.0, 1.0});
        CHECK(jlt_P(p, 0.0) == 4.0);
        const JltParams q = JltParams::make(1.0, {1.0, 2.0, 3.0});
        // Symbolic expansion: (e^{x²}(1+x²)(1+2x²)(1+3x²) − 1)/x² at x = 2.
        const double sym = (std::exp(4.0) * 5.0 * 9.0 * 13.0 - 1.0) / 4.0;
        CHECK(std::abs(jlt_P(q, 2.0) / sym - 1.0) < 1e-10);
        // α → 0 recovers the Lawlor polynomial.
        const JltParams tiny = JltParams::make(1e-12, {1.0, 2.0, 3.0});
        CHECK(std::abs(jlt_P(tiny, 0.7) - lawlor_P(LawlorParams::make({1.0, 2.0, 3.0}), 0.7)) < 1e-10);
    }

    TEST_CASE("alpha must be positive") {
        CHECK_THROWS_WITH(JltParams::make(0.0, {1.0, 1.0, 1.0}), "alpha must be positive; use lawlor");
    }

    TEST_CASE("angles against exp-sinh") {
        const std::vector<double> a = {1.0, 1.0, 1.0};
        const JltAngles j = jlt_angles(JltParams::make(1.0, a));
        const std::vector<double> ref = oracleTotals(a, 1.0);
        for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(j.phis[k] - ref[k]) < 1e-9);
        CHECK(std::abs(j.phis[0] - j.phis[1]) < 1e-14);
        auto g = test::rng(21);
        for (int i = 0; i < 5; ++i) {
            const JltAngles r = jlt_angles(JltParams::make(std::exp(std::normal_distribution<double>()(g)), test::neck_parameters(g, 3 + i % 3)));
            CHECK(r.phis.sum() > 0.0);
            CHECK(r.phis.sum() < kPi);
        }
    }

    TEST_CASE("closed forms") {
        // Printed convention c = ½: A = 2(π − Σφ)/α.
        CHECK(jlt_closed_form_A(kPi / 2, 2.0, 0.5) == doctest::Approx(kPi / 2));
        CHECK(jlt_tilde_closed_form_A(2.0 * kPi + kPi / 2, 3, 1.0, 0.5) == doctest::Approx(-kPi));
        // Consistent convention c = 2.
        CHECK(jlt_closed_form_A(kPi / 2, 2.0) == doctest::Approx(kPi / 8));
    }

    TEST_CASE("phase limits") {
        const JltExpander ex(JltParams::make(1.0, {1.0, 1.0, 1.0}));
        const auto [lo, hi] = ex.thetaLimits();
        CHECK(lo == 0.0);
        CHECK(std::abs(hi - (ex.angles().phis.sum() - kPi)) < 1e-12);
        CHECK(std::abs(ex.theta(-1e7)) < 1e-6);
        CHECK(std::abs(ex.theta(1e7) - hi) < 1e-6);
    }

    TEST_CASE("frame phase matches the phase formula") {
        const JltExpander ex(JltParams::make(0.7, {0.5, 1.5, 2.5}));
        auto g = test::rng(22);
        for (double y : {-20.0, -1.0, 0.0, 0.4, 3.0}) {
            const LagrangianSample s = ex.point(NeckPoint::make(y, test::sphere_point(g, 3)));
            CHECK(max_omega_residual(s.frame.vectors) < 1e-8);
            CHECK(std::abs(phase_of_frame(s.frame, s.theta) - s.theta) < 1e-10);
        }
    }

    TEST_CASE("expander identity against a geometric finite difference") {
        const double alpha = 1.3;
        const JltExpander ex(JltParams::make(alpha, {0.6, 1.1, 2.9}));
        auto g = test::rng(23);
        const RVector x = test::sphere_point(g, 3);
        for (double y : {-6.0, -1.0, 0.0, 0.5, 2.0}) {
            const double h = 1e-4;
            const double tp = phase_of_frame(ex.point(NeckPoint::make(y + h, x)).frame, ex.theta(y + h));
            const double tm = phase_of_frame(ex.point(NeckPoint::make(y - h, x)).frame, ex.theta(y - h));
            const LagrangianSample s = ex.point(NeckPoint::make(y, x));
            const double lambda = liouville_form(s.point, s.dPoint);
            // dθ = −2α·λ along the curve.
            CHECK(std::abs((tp - tm) / (2.0 * h) + kExpanderPotentialFactor * alpha * lambda) < 1e-7);
            CHECK(ex.expanderResidual(y) < 1e-10);
            // The printed factor ½ leaves (3α/2)·λ(∂_y).
            CHECK(std::abs(ex.expanderResidual(y, 0.5) - 1.5 * alpha * lambda) < 1e-10);
        }
        CHECK(ex.expanderResidual(0.0) < 1e-8);
    }

    TEST_CASE("perturbing one coordinate breaks the identity") {
        const double alpha = 1.0;
        const JltExpander ex(JltParams::make(alpha, {1.0, 2.0, 3.0}));
        auto g = test::rng(24);
        RVector x = test::sphere_point(g, 3);
        CMatrix mm = CMatrix::Identity(3, 3);
        mm(0, 0) = 1.01;
        auto phase = [&](double y, double hint) {
            const LagrangianSample s = ex.point(NeckPoint::make(y, x));
            const CMatrix q = gram_schmidt_real(mm * s.frame.vectors);
            return nearest_branch(std::arg(q.determinant()), hint);
        };
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            if (i % 40 == 0) x = test::sphere_point(g, 3);
            const double y = -4.0 + 0.2 * (i % 40);
            const double h = 1e-4, t0 = ex.theta(y);
            const LagrangianSample s = ex.point(NeckPoint::make(y, x));
            const double lambda = liouville_form(CmPoint::make(mm * s.point.coords), mm * s.dPoint);
            const double d = (phase(y + h, t0) - phase(y - h, t0)) / (2.0 * h);
            worst = std::max(worst, std::abs(d + kExpanderPotentialFactor * alpha * lambda));
        }
        CHECK(worst > 1e-3);
    }

    TEST_CASE("invariant: closed form against potential limit") {
        auto g = test::rng(25);
        for (int i = 0; i < 5; ++i) {
            const double alpha = std::exp(std::uniform_real_distribution<double>(-1.0, 1.0)(g));
            const JltExpander ex(JltParams::make(alpha, test::neck_parameters(g, 3 + i % 3)));
            const JltInvariant inv = ex.invariant();
            CHECK(inv.discrepancy() < 1e-7);
            CHECK(inv.closedForm > 0.0);
            // The printed factor overstates the invariant fourfold.
            const JltInvariant printed = ex.invariant(0.5);
            CHECK(std::abs(printed.closedForm / printed.potentialLimit - 4.0) < 1e-6);
        }
    }

    TEST_CASE("tilde expander") {
        const JltParams p = JltParams::make(1.0, {1.0, 2.0, 3.0});
        const JltTilde t = jlt_tilde(p);
        CHECK(t.neck.sumPhi() > 2.0 * kPi);
        CHECK(t.neck.sumPhi() < 3.0 * kPi);
        CHECK(t.invariant.closedForm < 0.0);
        CHECK(t.invariant.discrepancy() < 1e-7);
    }

    TEST_CASE("limit alpha -> 0") {
        const std::vector<double> a = {1.0, 2.0, 3.0};
        const LawlorAngles l = lawlor_angles(LawlorParams::make(a));
        const JltAngles j = jlt_angles(JltParams::make(1e-3, a));
        CHECK(test::max_abs_diff(l.phis.phis(), j.phis.phis()) < 1e-2);
    }
}

TEST_SUITE("expander inversion") {
    TEST_CASE("symmetric target") {
        const JltInversion inv = jlt_invert(1.0, AngleVector::make({0.6, 0.6, 0.6}));
        CHECK(std::abs(inv.params.a[0] - inv.params.a[2]) < 1e-9);
    }

    TEST_CASE("round trips") {
        auto g = test::rng(26);
        for (int i = 0; i < 5; ++i) {
            const double alpha = std::exp(std::uniform_real_distribution<double>(-0.7, 0.7)(g));
            const std::vector<double> a = test::neck_parameters(g, 3 + i % 3);
            const JltInversion inv = jlt_invert(alpha, jlt_angles(JltParams::make(alpha, a)).phis);
            CHECK(inv.trace.converged);
            CHECK(test::max_abs_diff(inv.params.a, a) < 1e-6);
        }
    }

    TEST_CASE("domain") {
        CHECK_THROWS_AS(jlt_invert(1.0, AngleVector::make({2.0, 2.0, 2.0})), PreconditionError);
        CHECK_THROWS_AS(jlt_invert(0.0, AngleVector::make({0.5, 0.5, 0.5})), PreconditionError);
    }
}
