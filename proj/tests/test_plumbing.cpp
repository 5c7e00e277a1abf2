#include <cmath>
#include <memory>

#include "doctest.h"
#include "slag/errors.hpp"
#include "slag/lawlor.hpp"
#include "slag/plumbing.hpp"
#include "support.hpp"

using namespace slag;

namespace {

PlumbingChart chart3(double T = 100.0) { return PlumbingChart::make(AngleVector::make({0.7, 1.1, kPi - 1.8}), T); }

DarbouxCoords coords(const RVector& v) {
    const auto m = v.size() / 2;
    return {v.head(m), v.tail(m)};
}

/// dλ̃(u, v) for constant fields u, v by fourth-order central differences of λ̃.
double exteriorDerivative(const PlumbingChart& c, const RVector& p, const RVector& u, const RVector& v, double h) {
    auto dir = [&](const RVector& a, const RVector& w) {
        auto lam = [&](double t) { return liouville_tilde(c, coords(p + t * a), w); };
        return (lam(-2.0 * h) - 8.0 * lam(-h) + 8.0 * lam(h) - lam(2.0 * h)) / (12.0 * h);
    };
    return dir(u, v) - dir(v, u);
}

double omega(const RVector& u, const RVector& v) {
    const auto m = u.size() / 2;
    return u.head(m).dot(v.tail(m)) - u.tail(m).dot(v.head(m));
}

}  // namespace

TEST_SUITE("cutoff") {
    TEST_CASE("smoothstep") {
        CHECK(smoothstep5(0.0) == 0.0);
        CHECK(smoothstep5(1.0) == 1.0);
        CHECK(smoothstep5(0.5) == doctest::Approx(0.5));
        CHECK(smoothstep5_prime(0.0) == 0.0);
        CHECK(smoothstep5_prime(1.0) == 0.0);
        for (double u : {0.1, 0.4, 0.8}) {
            const double h = 1e-6;
            CHECK(std::abs((smoothstep5(u + h) - smoothstep5(u - h)) / (2 * h) - smoothstep5_prime(u)) < 1e-8);
        }
    }

    TEST_CASE("eta is odd with plateaus") {
        const PlumbingChart c = chart3(10.0);
        CHECK(c.eta(0.0) == 0.0);
        CHECK(c.eta(10.0) == 0.0);
        CHECK(c.eta(20.0) == 1.0);
        CHECK(c.eta(-25.0) == -1.0);
        for (double s : {11.0, 13.7, 19.0}) CHECK(c.eta(-s) == -c.eta(s));
        CHECK(c.etaPrime(15.0) == doctest::Approx(15.0 / (8.0 * 10.0)));
        CHECK_THROWS_AS(PlumbingChart::make(AngleVector::make({1.0, 1.0, 1.0}), 0.0), PreconditionError);
    }
}

TEST_SUITE("darboux") {
    TEST_CASE("planes map to coordinate planes") {
        const PlumbingChart c = chart3();
        CVector real(3);
        real << 1.0, -2.0, 0.5;
        CHECK(to_darboux(CmPoint::make(real), c).y.norm() == 0.0);
        CVector onPhi(3);
        for (int j = 0; j < 3; ++j) onPhi(j) = std::polar(1.0 + j, c.phis()[static_cast<std::size_t>(j)]);
        CHECK(to_darboux(CmPoint::make(onPhi), c).x.norm() < 1e-15);
    }

    TEST_CASE("round trip and symplectic pullback") {
        const PlumbingChart c = chart3();
        auto g = test::rng(51);
        std::normal_distribution<double> n;
        for (int i = 0; i < 50; ++i) {
            CVector z(3), u(3), v(3);
            for (int j = 0; j < 3; ++j) {
                z(j) = {n(g), n(g)};
                u(j) = {n(g), n(g)};
                v(j) = {n(g), n(g)};
            }
            const CmPoint back = from_darboux(to_darboux(CmPoint::make(z), c), c);
            CHECK((back.coords - z).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(std::abs(omega(darboux_tangent(u, c), darboux_tangent(v, c)) - symplectic_form(u, v)) < 1e-12);
        }
    }
}

TEST_SUITE("sphere chart") {
    TEST_CASE("radius map") {
        CHECK(sphere_chart_radius(std::sqrt(std::exp(1.0) - 1.0)) == doctest::Approx(1.0));
        double prev = INFINITY;
        for (double r = 0.5; r <= 1e6; r *= 1.7) {
            const double rt = sphere_chart_radius(r);
            CHECK(rt < prev);
            prev = rt;
            CHECK(std::abs(sphere_chart_radius_inverse(rt) - r) < 1e-12 * r);
        }
        CHECK(sphere_chart_radius(1e150) < 1e-2);
    }

    TEST_CASE("chart round trip") {
        auto g = test::rng(52);
        for (int i = 0; i < 50; ++i) {
            const RVector x = std::exp(std::uniform_real_distribution<double>(std::log(0.5), std::log(1e6))(g)) * test::sphere_point(g, 3);
            CHECK((sphere_chart_inverse(sphere_chart(x)) - x).norm() < 1e-12 * x.norm());
        }
        CHECK_THROWS_AS(sphere_chart(RVector::Zero(3)), GeometryError);
    }

    TEST_CASE("compactified radial power") {
        const RadialPowerField f(3, -1.0);
        for (double rt : {0.5, 0.2, 0.1, 0.05}) {
            RVector xt = RVector::Zero(3);
            xt(1) = rt;
            CHECK(std::abs(compactified_graph_value(f, -1.0, xt) - 1.0 / std::sqrt(std::expm1(1.0 / rt))) < 1e-14);
        }
        CHECK(compactified_graph_value(f, -1.0, RVector::Zero(3)) == 0.0);
        const FunctionField zero(3, [](const Eigen::VectorXd&) { return 0.0; });
        CHECK(compactified_graph_value(zero, -1.0, RVector::Ones(3) * 0.1) == 0.0);
        CHECK_THROWS_AS(compactified_graph_value(f, 0.0, RVector::Ones(3)), PreconditionError);
    }

    TEST_CASE("flat at the point at infinity") {
        const RadialPowerField f(3, -1.0);
        // r̃^{−5}e^{−1/(2r̃)} peaks at r̃ = 1/10.
        double prev = INFINITY;
        for (double rt = 0.1; rt >= 0.01; rt /= 2.0) {
            RVector xt = RVector::Zero(3);
            xt(0) = rt;
            const double ratio = compactified_graph_value(f, -1.0, xt) / std::pow(rt, 5);
            CHECK(ratio < prev);
            prev = ratio;
        }
        RVector xt = RVector::Zero(3);
        xt(0) = 0.02;
        CHECK(compactified_graph_value(f, -1.0, xt) / std::pow(0.02, 5) < 1.0);
    }
}

TEST_SUITE("liouville") {
    TEST_CASE("regions of the modified form") {
        const PlumbingChart c = chart3(10.0);
        auto g = test::rng(53);
        std::normal_distribution<double> n;
        for (int i = 0; i < 30; ++i) {
            RVector v(6);
            for (int j = 0; j < 6; ++j) v(j) = n(g);
            RVector p(6);
            for (int j = 0; j < 6; ++j) p(j) = n(g);
            const DarbouxCoords d = coords(p);
            const double lam = 0.5 * (d.x.dot(v.tail(3)) - d.y.dot(v.head(3)));
            if (std::abs(d.x.squaredNorm() - d.y.squaredNorm()) <= 10.0) CHECK(std::abs(liouville_tilde(c, d, v) - lam) < 1e-13);

            DarbouxCoords big = d;  // s = 25 ≥ 2T
            big.x *= std::sqrt(d.y.squaredNorm() + 25.0) / d.x.norm();
            CHECK(std::abs(liouville_tilde(c, big, v) + big.y.dot(v.head(3))) < 1e-10);

            DarbouxCoords neg = d;  // s = −25 ≤ −2T
            neg.y *= std::sqrt(d.x.squaredNorm() + 25.0) / d.y.norm();
            CHECK(std::abs(liouville_tilde(c, neg, v) - neg.x.dot(v.tail(3))) < 1e-10);
        }
        // On y = 0 far out, λ̃ vanishes on tangent vectors to {y = 0}.
        RVector p = RVector::Zero(6);
        p(0) = 5.0;
        RVector v = RVector::Zero(6);
        v(1) = 1.0;
        CHECK(liouville_tilde(c, coords(p), v) == 0.0);
    }

    TEST_CASE("d of the modified form is omega") {
        const PlumbingChart c = chart3(1.0);
        auto g = test::rng(54);
        std::normal_distribution<double> n;
        // Sample every band of s = |x|² − |y|², including the transition regions.
        for (double target : {-3.0, -1.5, 0.0, 1.2, 1.5, 1.9, 3.0}) {
            for (int i = 0; i < 10; ++i) {
                RVector p(6), u(6), v(6);
                for (int j = 0; j < 6; ++j) {
                    p(j) = n(g);
                    u(j) = n(g);
                    v(j) = n(g);
                }
                // Rescale x to hit s = target.
                const double need = target + p.tail(3).squaredNorm();
                if (need <= 0.0) continue;
                p.head(3) *= std::sqrt(need) / p.head(3).norm();
                CHECK(std::abs(exteriorDerivative(c, p, u, v, 1e-4) - omega(u, v)) < 1e-6);
            }
        }
    }

    TEST_CASE("compactified potential") {
        CHECK(compactified_potential(1.0, 2.0, CompactPointKind::Infinity0, 2.5) == 0.0);
        CHECK(compactified_potential(1.0, 2.0, CompactPointKind::InfinityPhi, 2.5) == 2.5);
        CHECK(compactified_potential(1.0, 2.0, CompactPointKind::Interior, 2.5) == 3.0);
    }
}

TEST_SUITE("neck end graph") {
    TEST_CASE("graph gradient is the imaginary part") {
        const LawlorNeck neck(LawlorParams::make({1.0, 2.0, 3.0}));
        const NeckEndGraph f(neck.profileEngine());
        auto g = test::rng(55);
        for (double y : {-5.0, -30.0, -200.0}) {
            const LagrangianSample s = neck.point(NeckPoint::make(y, test::sphere_point(g, 3)));
            const RVector X = s.point.coords.real();
            const NeckEndGraph::Preimage pre = f.preimage(X);
            CHECK(std::abs(pre.y - y) < 1e-8 * std::abs(y));
            CHECK((pre.Y - s.point.coords.imag()).norm() < 1e-9);
            const RVector grad = fd_gradient(f, X, 1e-4 * X.norm());
            CHECK((grad - s.point.coords.imag()).norm() < 1e-7 * (1.0 + s.point.coords.imag().norm()));
        }
        CHECK_THROWS_AS(f.preimage(RVector::Ones(3) * 0.1), GeometryError);
    }

    TEST_CASE("graph function and h decay along the end") {
        const LawlorNeck neck(LawlorParams::make({1.0, 2.0, 3.0}));
        const NeckEndGraph f(neck.profileEngine());
        const PlumbingChart c = PlumbingChart::make(neck.angles().phis, 100.0);
        RVector x = RVector::Ones(3) / std::sqrt(3.0);
        double prevF = INFINITY, prevH = INFINITY;
        std::vector<double> hs;
        for (double y : {-1e2, -1e3, -1e4}) {
            const LagrangianSample s = neck.point(NeckPoint::make(y, x));
            const double fv = std::abs(f.value(s.point.coords.real()));
            const double h = std::abs(plumbing_h(c, to_darboux(s.point, c)));
            CHECK(fv < prevF);
            CHECK(h < prevH);
            prevF = fv;
            prevH = h;
            hs.push_back(h);
        }
        // h = O(r^{2−m}) with r ~ |y|.
        CHECK(std::abs(std::log10(hs[1] / hs[2]) - 1.0) < 0.05);
    }
}
