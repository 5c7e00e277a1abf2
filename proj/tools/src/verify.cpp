#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <set>

#include "slag/errors.hpp"
#include "slag/floer.hpp"
#include "slag/graphs.hpp"
#include "slag/harmonic.hpp"
#include "slag/jlt.hpp"
#include "slag/lawlor.hpp"
#include "slag/plumbing.hpp"
#include "slag/radial_modes.hpp"
#include "slag_cli/commands.hpp"
#include "slag_cli/parallel.hpp"

namespace slag::cli {

namespace {

struct Check {
    bool pass = false;
    double metric = 0.0;
    double tolerance = 0.0;
    Json detail = Json::object();
};

struct Context {
    std::uint64_t seed;
    double faultTheta;
    double factor;
    ModeWeight weight;
    unsigned workers;
};

Rng rngFor(const Context& ctx, std::uint64_t salt) { return Rng(ctx.seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1))); }

int randomDim(Rng& rng) { return std::uniform_int_distribution<int>(3, 5)(rng); }

Check checkAngles(const Context& ctx) {
    Rng rng = rngFor(ctx, 1);
    Check c{true, 0.0, 1e-8};
    for (int i = 0; i < 10; ++i) {
        const LawlorAngles ang = lawlor_angles(LawlorParams::make(random_neck_parameters(rng, randomDim(rng))));
        c.metric = std::max(c.metric, std::abs(ang.phis.sum() - kPi));
    }
    c.pass = c.metric < c.tolerance;
    c.detail["families"] = 10;
    return c;
}

Check checkSlResiduals(const Context& ctx) {
    Rng rng = rngFor(ctx, 2);
    Check c{true, 0.0, 1e-8};
    for (int fam = 0; fam < 3; ++fam) {
        const int m = randomDim(rng);
        const LawlorNeck neck(LawlorParams::make(random_neck_parameters(rng, m)));
        std::uniform_real_distribution<double> u(-4.0, 4.0);
        for (int i = 0; i < 30; ++i) {
            const LagrangianSample s = neck.point(NeckPoint::make(std::sinh(u(rng)), random_sphere_point(rng, m)));
            c.metric = std::max({c.metric, max_omega_residual(s.frame.vectors), std::abs(holomorphic_volume(s.frame).imag())});
        }
    }
    c.pass = c.metric < c.tolerance;
    c.detail["families"] = 3;
    c.detail["samplesPerFamily"] = 30;
    return c;
}

Check checkInvariants(const Context& ctx) {
    Rng rng = rngFor(ctx, 3);
    Check c{true, 0.0, 1e-7};
    double lawlorErr = 0.0, jltErr = 0.0;
    bool signs = true;
    for (int i = 0; i < 3; ++i) {
        const LawlorNeck neck(LawlorParams::make(random_neck_parameters(rng, randomDim(rng))));
        const double A = neck.angles().A;
        lawlorErr = std::max(lawlorErr, std::abs(A - neck.invariantA()));
        signs = signs && A > 0.0 && neck.tilde().invariant() < 0.0;
    }
    std::uniform_real_distribution<double> alpha(0.25, 2.0);
    for (int i = 0; i < 3; ++i) {
        const JltExpander ex(JltParams::make(alpha(rng), random_neck_parameters(rng, randomDim(rng))));
        const JltInvariant inv = ex.invariant(ctx.factor);
        jltErr = std::max(jltErr, inv.discrepancy());
        const JltTilde tl = jlt_tilde(ex.params(), ctx.factor);
        signs = signs && inv.closedForm > 0.0 && inv.potentialLimit > 0.0 && tl.invariant.closedForm < 0.0 &&
                tl.invariant.potentialLimit < 0.0;
    }
    c.metric = std::max(lawlorErr, jltErr);
    c.pass = lawlorErr < 1e-8 && jltErr < 1e-7 && signs;
    c.detail = {{"lawlorMax", lawlorErr}, {"jltMax", jltErr}, {"signs", signs}, {"potentialFactor", ctx.factor}};
    return c;
}

Check checkExpander(const Context& ctx) {
    Rng rng = rngFor(ctx, 4);
    Check c{true, 0.0, 1e-7};
    ProfileOptions popts;
    popts.phaseArgScale = 1.0 + ctx.faultTheta;
    std::uniform_real_distribution<double> alpha(0.25, 2.0), u(-4.0, 4.0);
    for (int fam = 0; fam < 3; ++fam) {
        const JltExpander ex(JltParams::make(alpha(rng), random_neck_parameters(rng, randomDim(rng))), popts);
        for (int i = 0; i < 20; ++i) c.metric = std::max(c.metric, ex.expanderResidual(std::sinh(u(rng)), ctx.factor));
    }
    c.pass = c.metric < c.tolerance;
    c.detail = {{"potentialFactor", ctx.factor}, {"faultTheta", ctx.faultTheta}};
    return c;
}

/// Runs the solver from the default guess, then from up to three log-normal perturbations of it.
template <class Solve>
auto withRetry(Rng& rng, const std::vector<double>& guess, Solve solve) -> std::optional<decltype(solve(InversionOptions{}))> {
    std::normal_distribution<double> n(0.0, 0.2);
    for (int attempt = 0; attempt < 4; ++attempt) {
        InversionOptions o;
        o.initialGuess = guess;
        if (attempt > 0)
            for (double& g : o.initialGuess) g *= std::exp(n(rng));
        try {
            return solve(o);
        } catch (const ConvergenceError&) {
        }
    }
    return std::nullopt;
}

Check checkInversion(const Context& ctx) {
    Rng rng = rngFor(ctx, 5);
    Check c{true, 0.0, 1e-6};
    int converged = 0, attempts = 0;
    for (int i = 0; i < 2; ++i) {
        const std::vector<double> a = random_neck_parameters(rng, 3 + i);
        const LawlorAngles target = lawlor_angles(LawlorParams::make(a));
        ++attempts;
        const auto inv = withRetry(rng, lawlor_initial_guess(target), [&](const InversionOptions& o) { return lawlor_invert(target, o); });
        if (!inv) {
            c.metric = INFINITY;
            continue;
        }
        for (std::size_t k = 0; k < a.size(); ++k) c.metric = std::max(c.metric, std::abs(inv->params.a[k] - a[k]));
        ++converged;
    }
    std::uniform_real_distribution<double> alpha(0.5, 2.0);
    for (int i = 0; i < 2; ++i) {
        const double al = alpha(rng);
        const std::vector<double> a = random_neck_parameters(rng, 3 + i);
        const JltAngles target = jlt_angles(JltParams::make(al, a));
        ++attempts;
        const auto inv = withRetry(rng, jlt_initial_guess(al, target.phis), [&](const InversionOptions& o) { return jlt_invert(al, target.phis, o); });
        if (!inv) {
            c.metric = INFINITY;
            continue;
        }
        for (std::size_t k = 0; k < a.size(); ++k) c.metric = std::max(c.metric, std::abs(inv->params.a[k] - a[k]));
        ++converged;
    }
    c.pass = converged == attempts && c.metric < c.tolerance;
    c.detail = {{"attempts", attempts}, {"converged", converged}};
    return c;
}

Check checkMaslov(const Context& ctx) {
    Rng rng = rngFor(ctx, 6);
    Check c{true, 0.0, 0.0};
    int sumFail = 0, windowFail = 0, slFail = 0;
    std::uniform_int_distribution<int> lift(-3, 3);
    for (int i = 0; i < 100; ++i) {
        const int m = randomDim(rng);
        const CMatrix ua = random_unitary(rng, m), ub = random_unitary(rng, m);
        const LagrangianPlane pa = LagrangianPlane::fromUnitary(ua), pb = LagrangianPlane::fromUnitary(ub);
        AngleVector ab, ba;
        try {
            ab = characteristic_angles(pa, pb);
            ba = characteristic_angles(pb, pa);
        } catch (const GeometryError&) {
            continue;
        }
        const double ta = std::arg(ua.determinant()) + kPi * lift(rng);
        const double tb = std::arg(ub.determinant()) + kPi * lift(rng);
        const int mu = maslov_degree(ab, {ta, tb, 0.0, 0.0});
        const int nu = maslov_degree(ba, {tb, ta, 0.0, 0.0});
        if (mu + nu != m) ++sumFail;
        if (!((ta - tb) / kPi < mu && mu < (ta - tb) / kPi + m)) ++windowFail;

        // Special Lagrangian pair: both planes of phase 0.
        CMatrix sa = ua, sb = ub;
        sa.col(0) *= std::polar(1.0, -std::arg(ua.determinant()));
        sb.col(0) *= std::polar(1.0, -std::arg(ub.determinant()));
        try {
            const AngleVector sab = characteristic_angles(LagrangianPlane::fromUnitary(sa), LagrangianPlane::fromUnitary(sb));
            const int muSl = maslov_degree(sab, {0.0, 0.0, 0.0, 0.0});
            if (!degree_window_check({0.0, 0.0, 0.0, 0.0}, muSl, 0.0, m)) ++slFail;
        } catch (const GeometryError&) {
        }
    }
    c.metric = sumFail + windowFail + slFail;
    c.pass = c.metric == 0.0;
    c.detail = {{"pairs", 100}, {"sumFailures", sumFail}, {"windowFailures", windowFail}, {"slWindowFailures", slFail}};
    return c;
}

Check checkOde(const Context& ctx) {
    struct Job {
        int m, k;
        double alpha;
    };
    std::vector<Job> jobs;
    for (int m = 3; m <= 5; ++m)
        for (int k = 0; k <= 8; ++k)
            for (double al : {0.5, 1.0, 2.0}) jobs.push_back({m, k, al});
    std::vector<double> grid;
    for (int i = 0; i < 100; ++i) grid.push_back(2.0 * i / 99.0);
    struct Res {
        double overlap = 0.0, c1Err = 0.0;
        bool ok = true;
    };
    const auto res = parallel_map<Res>(
        jobs.size(),
        [&](std::size_t i) {
            const Job& j = jobs[i];
            const AkRecord rec = solve_Ak(j.m, j.k, j.alpha, 2.0, ModeWeight::RPowMinusMMinus1);
            Res r;
            r.overlap = rec.overlapDiscrepancy;
            const double expect = (j.k * (j.m + j.k - 2.0) - 3.0 * (j.m + 1)) / (2.0 * j.alpha);
            r.c1Err = std::abs(rec.taylor.at(1) - expect) / std::max(1.0, std::abs(expect));
            if (rec.ode.kappa < 0.0) {
                double prev = -INFINITY;
                for (double t : grid) {
                    const double v = rec.value(t);
                    if (!(v > prev) || v < 1.0) r.ok = false;
                    prev = v;
                }
                r.ok = r.ok && check_Ak_log_derivative_bound(rec, grid, 1e-9);
            }
            return r;
        },
        ctx.workers);
    Check c{true, 0.0, 1e-8};
    double c1 = 0.0;
    bool shape = true;
    for (const auto& r : res) {
        c.metric = std::max(c.metric, r.overlap);
        c1 = std::max(c1, r.c1Err);
        shape = shape && r.ok;
    }
    c.pass = c.metric < c.tolerance && c1 < 1e-12 && shape;
    c.detail = {{"cases", jobs.size()}, {"c1MaxError", c1}, {"monotoneAndBounded", shape}};
    return c;
}

Check checkModes(const Context& ctx) {
    Rng rng = rngFor(ctx, 8);
    Check c{true, 0.0, 1e-6};
    const int m = 3;
    std::uniform_real_distribution<double> radius(2.0, 6.0);
    for (int k = 0; k <= 4; ++k) {
        auto rec = std::make_shared<const AkRecord>(solve_Ak(m, k, 1.0, 1.0, ctx.weight));
        const auto basis = harmonic_basis(m, k);
        const ExpansionField f(m, {ExpansionMode{k, basis.front(), rec}});
        for (int i = 0; i < 20; ++i) {
            const RVector x = radius(rng) * random_sphere_point(rng, m);
            c.metric = std::max(c.metric, std::abs(linearized_expander_operator(f, 1.0, x)));
        }
    }
    c.pass = c.metric < c.tolerance;
    c.detail = {{"weightExponent", ctx.weight == ModeWeight::RPowMinusMMinus1 ? -(m + 1) : -(m + 2)}};
    return c;
}

Check checkInversionTransform(const Context& ctx) {
    Rng rng = rngFor(ctx, 9);
    Check c{true, 0.0, 1e-6};
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_real_distribution<double> radius(0.5, 2.0);
    double fdMax = 0.0;
    for (int fam = 0; fam < 3; ++fam) {
        const int m = 3 + fam;
        Polynomial p(m);
        for (int d = 0; d <= 3; ++d)
            for (const auto& e : monomials_of_degree(m, d)) p.addTerm(e, n(rng));
        const auto F = std::make_shared<PolynomialField>(p);
        const auto f = inversion_transform(F, m, InversionDirection::Forward);
        for (int i = 0; i < 20; ++i) {
            const RVector y = radius(rng) * random_sphere_point(rng, m);
            const double s = y.norm();
            const RVector x = y / (s * s);
            const double rhs = std::pow(s, m + 2) * F->laplacian(y);
            const double scale = std::max(1.0, std::abs(rhs));
            c.metric = std::max(c.metric, std::abs(f->laplacian(x) - rhs) / scale);
            const double fd = fd_hessian(*f, x, ScalarField::fdStep(x)).trace();
            fdMax = std::max(fdMax, std::abs(fd - rhs) / scale);
        }
    }
    c.pass = c.metric < c.tolerance && fdMax < 1e-5;
    c.detail = {{"finiteDifferenceMax", fdMax}};
    return c;
}

Check checkPlumbing(const Context& ctx) {
    PlumbingConfig cfg;
    cfg.a = {1.0, 2.0, 3.0};
    cfg.samples = 60;
    cfg.seed = ctx.seed;
    const CommandResult r = cmd_plumbing(cfg);
    Check c{r.exitCode == kExitPass, r.report["dLambdaTildeMinusOmegaMax"].get<double>(), 1e-6};
    c.detail = {{"chartRoundTripMax", r.report["chartRoundTripMax"]},
                {"neckEndMonotone", r.report["decay"]["neckEnd"]["monotone"]},
                {"radialPowerMonotone", r.report["decay"]["radialPower"]["monotone"]}};
    return c;
}

Check checkFloer(const Context& ctx) {
    Rng rng = rngFor(ctx, 11);
    bool ok = true;
    for (int m = 3; m <= 5; ++m) {
        std::vector<double> phi(static_cast<std::size_t>(m));
        std::uniform_real_distribution<double> u(0.2, kPi - 0.2);
        for (double& p : phi) p = u(rng);
        const AngleVector ang = AngleVector::make(phi);
        ok = ok && cohomology_dims(sphere_pair_complex(ang, false)) == std::map<int, int>{{0, 1}};
        ok = ok && cohomology_dims(sphere_pair_complex(ang, true)) == std::map<int, int>{{m, 1}};
        ok = ok && expected_sphere_cohomology(m) == std::map<int, int>{{0, 1}, {m, 1}};
    }
    // d ∘ d ≠ 0 must be rejected.
    bool rejected = false;
    try {
        build_complex({{"a", 0}, {"b", 1}, {"c", 2}}, {{{"a", "b"}, 1}, {{"b", "c"}, 1}});
    } catch (const PreconditionError&) {
        rejected = true;
    }
    Check c{ok && rejected, ok && rejected ? 0.0 : 1.0, 0.0};
    c.detail = {{"golden", ok}, {"dSquaredRejected", rejected}};
    return c;
}

Check checkLimit(const Context&) {
    const std::vector<double> a = {1.0, 2.0, 3.0};
    const LawlorAngles l = lawlor_angles(LawlorParams::make(a));
    const JltAngles j = jlt_angles(JltParams::make(1e-3, a));
    Check c{true, 0.0, 1e-2};
    for (int k = 0; k < 3; ++k)
        c.metric = std::max(c.metric, std::abs(l.phis[static_cast<std::size_t>(k)] - j.phis[static_cast<std::size_t>(k)]));
    c.pass = c.metric < c.tolerance;
    return c;
}

const std::vector<std::pair<std::string, std::function<Check(const Context&)>>>& battery() {
    static const std::vector<std::pair<std::string, std::function<Check(const Context&)>>> b = {
        {"angles", checkAngles},
        {"sl-residuals", checkSlResiduals},
        {"invariants", checkInvariants},
        {"expander", checkExpander},
        {"inversion", checkInversion},
        {"maslov", checkMaslov},
        {"ode", checkOde},
        {"modes", checkModes},
        {"inversion-transform", checkInversionTransform},
        {"plumbing", checkPlumbing},
        {"floer", checkFloer},
        {"limit", checkLimit},
    };
    return b;
}

}  // namespace

std::vector<std::string> verify_check_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : battery()) names.push_back(name);
    return names;
}

CommandResult cmd_verify(const VerifyConfig& cfg) {
    const auto names = verify_check_names();
    std::set<std::string> only(cfg.only.begin(), cfg.only.end());
    for (const auto& n : only)
        if (std::find(names.begin(), names.end(), n) == names.end())
            throw PreconditionError("unknown check '" + n + "'");

    const Context ctx{cfg.seed, cfg.faultTheta, cfg.printedConventions ? 0.5 : kExpanderPotentialFactor,
                      cfg.printedConventions ? ModeWeight::RPowMinusMMinus1 : ModeWeight::RPowMinusMMinus2, cfg.workers};
    CommandResult out;
    out.table.header = {"check", "pass", "metric", "tolerance"};
    Json checks = Json::object();
    bool all = true;
    for (const auto& [name, fn] : battery()) {
        if (!only.empty() && !only.count(name)) continue;
        Check c;
        try {
            c = fn(ctx);
        } catch (const std::exception& e) {
            c.pass = false;
            c.metric = INFINITY;
            c.detail = {{"error", e.what()}};
        }
        all = all && c.pass;
        checks[name] = {{"pass", c.pass},
                        {"metric", std::isfinite(c.metric) ? Json(c.metric) : Json(nullptr)},
                        {"tolerance", c.tolerance},
                        {"detail", c.detail}};
        out.table.rows.push_back({name, c.pass, checks[name]["metric"], c.tolerance});
    }
    out.report["checks"] = checks;
    out.report["seed"] = cfg.seed;
    out.report["conventions"] = cfg.printedConventions ? "printed" : "consistent";
    out.report["faultTheta"] = cfg.faultTheta;
    out.exitCode = all ? kExitPass : kExitCheckFailure;
    finalize_report(out, "verify");
    return out;
}

}  // namespace slag::cli
