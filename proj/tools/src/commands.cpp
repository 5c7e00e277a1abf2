#include "slag_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "slag/errors.hpp"
#include "slag/floer.hpp"
#include "slag/graphs.hpp"
#include "slag/harmonic.hpp"
#include "slag/jlt.hpp"
#include "slag/lawlor.hpp"
#include "slag/plumbing.hpp"
#include "slag_cli/floer_io.hpp"
#include "slag_cli/parallel.hpp"

namespace slag::cli {

RunEnvironment read_environment() {
    RunEnvironment env;
    if (const char* s = std::getenv("SLAG_SEED"); s && *s) {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used);
        if (used != std::string(s).size()) throw std::invalid_argument("SLAG_SEED must be an unsigned integer");
        env.seed = v;
    }
    if (const char* s = std::getenv("SLAG_FAULT_THETA"); s && *s) {
        std::size_t used = 0;
        env.faultTheta = std::stod(s, &used);
        if (used != std::string(s).size() || !std::isfinite(env.faultTheta))
            throw std::invalid_argument("SLAG_FAULT_THETA must be a finite number");
    }
    return env;
}

RVector random_sphere_point(Rng& rng, int m) {
    std::normal_distribution<double> n(0.0, 1.0);
    RVector x(m);
    do {
        for (int i = 0; i < m; ++i) x(i) = n(rng);
    } while (x.norm() < 1e-3);
    return x / x.norm();
}

std::vector<double> random_neck_parameters(Rng& rng, int m, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    std::vector<double> a(static_cast<std::size_t>(m));
    for (double& ak : a) ak = std::exp(u(rng));
    return a;
}

CMatrix random_unitary(Rng& rng, int m) {
    std::normal_distribution<double> n(0.0, 1.0);
    CMatrix z(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) z(i, j) = Complex(n(rng), n(rng));
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ() * CMatrix::Identity(m, m);
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < m; ++j) q.col(j) *= std::polar(1.0, std::arg(r(j, j)));
    return q;
}

namespace {

Json toJson(const std::vector<double>& v) { return Json(v); }

Json toJson(const Eigen::VectorXd& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

/// y = sinh(u) with u uniform on [−4, 4]: dense near the neck, reaching |y| ≈ 27.
std::vector<double> neckCoordinates(Rng& rng, int n) {
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    std::vector<double> y(static_cast<std::size_t>(n));
    for (double& v : y) v = std::sinh(u(rng));
    return y;
}

Json mapToJson(const std::map<int, int>& m) {
    Json j = Json::object();
    for (const auto& [k, v] : m) j[std::to_string(k)] = v;
    return j;
}

}  // namespace

CommandResult cmd_lawlor(const LawlorConfig& cfg) {
    if (cfg.samples < 0) throw PreconditionError("samples must be non-negative");
    const LawlorParams params = LawlorParams::make(cfg.a);
    const LawlorNeck neck(params);
    const int m = params.m;
    const LawlorAngles ang = neck.angles();

    Rng rng(cfg.seed);
    const std::vector<double> ys = neckCoordinates(rng, cfg.samples);
    std::vector<RVector> xs;
    for (int i = 0; i < cfg.samples; ++i) xs.push_back(random_sphere_point(rng, m));

    struct Res {
        double omega = 0.0, imOmega = 0.0, theta = 0.0;
    };
    const auto res = parallel_map<Res>(
        ys.size(),
        [&](std::size_t i) {
            const LagrangianSample s = neck.point(NeckPoint::make(ys[i], xs[i]));
            return Res{max_omega_residual(s.frame.vectors), std::abs(holomorphic_volume(s.frame).imag()),
                       std::abs(s.theta)};
        },
        cfg.workers);
    Res worst;
    for (const auto& r : res) {
        worst.omega = std::max(worst.omega, r.omega);
        worst.imOmega = std::max(worst.imOmega, r.imOmega);
        worst.theta = std::max(worst.theta, r.theta);
    }

    const Eigen::VectorXd lim = neck.profileEngine()->limitsFromTable();
    CommandResult out;
    out.report["a"] = toJson(params.a);
    out.report["phi"] = toJson(ang.phis.phis());
    out.report["sumPhi"] = ang.phis.sum();
    out.report["A"] = ang.A;
    out.report["samples"] = cfg.samples;
    out.report["seed"] = cfg.seed;
    out.report["residuals"] = {{"omegaMax", worst.omega}, {"imOmegaMax", worst.imOmega}, {"thetaMax", worst.theta}};
    out.report["potentialLimits"] = {{"minusInfinity", 0.0}, {"plusInfinity", lim(m)}};
    const bool ok = std::abs(ang.phis.sum() - kPi) < cfg.tol && worst.omega < cfg.tol && worst.imOmega < cfg.tol &&
                    std::abs(lim(m) - ang.A) < cfg.tol;
    out.exitCode = ok ? kExitPass : kExitCheckFailure;
    finalize_report(out, "lawlor");
    return out;
}

CommandResult cmd_expander(const ExpanderConfig& cfg) {
    if (!(cfg.factor > 0.0)) throw PreconditionError("potential factor must be positive");
    const JltParams params = JltParams::make(cfg.alpha, cfg.a);
    ProfileOptions popts;
    popts.phaseArgScale = 1.0 + cfg.faultTheta;
    const JltExpander ex(params, popts);

    Rng rng(cfg.seed);
    const std::vector<double> ys = neckCoordinates(rng, cfg.samples);
    auto residualMax = [&](double c) {
        double r = 0.0;
        for (double y : ys) r = std::max(r, ex.expanderResidual(y, c));
        return r;
    };
    auto convention = [&](double c) {
        const JltInvariant inv = ex.invariant(c);
        return Json{{"potentialFactor", c},
                    {"A_closedForm", inv.closedForm},
                    {"A_potentialLimit", inv.potentialLimit},
                    {"discrepancy", inv.discrepancy()},
                    {"expanderResidualMax", residualMax(c)}};
    };

    const JltAngles ang = ex.angles(cfg.factor);
    const JltInvariant inv = ex.invariant(cfg.factor);
    const double resMax = residualMax(cfg.factor);
    const auto [th0, th1] = ex.thetaLimits();
    const double thetaErr = std::max(std::abs(th0), std::abs(th1 - (ang.phis.sum() - kPi)));

    CommandResult out;
    out.report["a"] = toJson(params.a);
    out.report["alpha"] = params.alpha;
    out.report["phi"] = toJson(ang.phis.phis());
    out.report["sumPhi"] = ang.phis.sum();
    out.report["potentialFactor"] = cfg.factor;
    out.report["A_closedForm"] = inv.closedForm;
    out.report["A_potentialLimit"] = inv.potentialLimit;
    out.report["expanderResidualMax"] = resMax;
    out.report["thetaLimits"] = {th0, th1};
    out.report["thetaLimitError"] = thetaErr;
    out.report["samples"] = cfg.samples;
    out.report["seed"] = cfg.seed;
    out.report["faultTheta"] = cfg.faultTheta;
    out.report["conventions"] = {{"consistent", convention(kExpanderPotentialFactor)}, {"printed", convention(0.5)}};
    const bool ok = resMax < cfg.tol && inv.discrepancy() < cfg.tol && thetaErr < cfg.tol;
    out.exitCode = ok ? kExitPass : kExitCheckFailure;
    finalize_report(out, "expander");
    return out;
}

namespace {

Json traceJson(const NewtonTrace& t) {
    return Json{{"iterations", t.iterations}, {"converged", t.converged}, {"residualNorms", t.residualNorms}};
}

}  // namespace

CommandResult cmd_invert(const InvertConfig& cfg) {
    CommandResult out;
    InversionOptions opts;
    opts.newton.maxIterations = cfg.maxIterations;
    out.report["mode"] = cfg.mode;
    out.report["targetPhi"] = toJson(cfg.phi);
    try {
        if (cfg.mode == "lawlor") {
            const int m = static_cast<int>(cfg.phi.size());
            if (m < 3) throw PreconditionError("target needs m >= 3 angles");
            double sum = 0.0;
            for (double p : cfg.phi) sum += p;
            // Rounded input is moved onto Σφ = π by an equal shift; larger gaps are errors.
            if (std::abs(sum - kPi) > 1e-3)
                throw PreconditionError("Lawlor angles must sum to pi (got " + std::to_string(sum) + ")");
            const double shift = (kPi - sum) / m;
            std::vector<double> adj = cfg.phi;
            for (double& p : adj) p += shift;
            const LawlorAngles target{AngleVector::make(adj), cfg.A};
            out.report["targetAdjustment"] = shift;
            out.report["targetA"] = cfg.A;
            const LawlorInversion inv = lawlor_invert(target, opts);
            out.report["a"] = toJson(inv.params.a);
            out.report["forwardResidual"] = inv.forwardResidual;
            out.report["trace"] = traceJson(inv.trace);
            out.exitCode = inv.forwardResidual < cfg.tol ? kExitPass : kExitCheckFailure;
        } else if (cfg.mode == "jlt") {
            const AngleVector target = AngleVector::make(cfg.phi);
            const JltInversion inv = jlt_invert(cfg.alpha, target, opts);
            out.report["alpha"] = cfg.alpha;
            out.report["a"] = toJson(inv.params.a);
            out.report["A_closedForm"] = jlt_closed_form_A(target.sum(), cfg.alpha);
            out.report["forwardResidual"] = inv.forwardResidual;
            out.report["trace"] = traceJson(inv.trace);
            out.exitCode = inv.forwardResidual < cfg.tol ? kExitPass : kExitCheckFailure;
        } else {
            throw PreconditionError("mode must be lawlor or jlt");
        }
    } catch (const ConvergenceError& e) {
        out.report["error"] = e.what();
        out.report["bestResidual"] = e.bestResidual();
        out.exitCode = kExitCheckFailure;
    }
    finalize_report(out, "invert");
    return out;
}

CommandResult cmd_expansion(const ExpansionConfig& cfg) {
    if (cfg.kMax < 0) throw PreconditionError("k-max must be non-negative");
    if (cfg.gridPoints < 2) throw PreconditionError("grid needs at least 2 points");
    const std::size_t nk = static_cast<std::size_t>(cfg.kMax) + 1;
    auto recs = parallel_map<std::shared_ptr<const AkRecord>>(
        nk,
        [&](std::size_t k) {
            return std::make_shared<const AkRecord>(solve_Ak(cfg.m, static_cast<int>(k), cfg.alpha, cfg.T, cfg.weight));
        },
        cfg.workers);

    std::vector<double> grid;
    for (int i = 0; i < cfg.gridPoints; ++i) grid.push_back(cfg.T * i / (cfg.gridPoints - 1));

    Rng rng(cfg.seed);
    std::uniform_real_distribution<double> radius(2.0, 6.0);
    std::vector<RVector> pts;
    for (int i = 0; i < cfg.modePoints; ++i) pts.push_back(radius(rng) * random_sphere_point(rng, cfg.m));

    CommandResult out;
    out.table.header = {"k", "t", "A", "dA"};
    Json modes = Json::array();
    bool ok = true;
    for (std::size_t k = 0; k < nk; ++k) {
        const AkRecord& rec = *recs[k];
        const double c1Formula = -rec.ode.kappa / (2.0 * cfg.alpha);
        const double c1 = rec.taylor.size() > 1 ? rec.taylor[1] : 0.0;
        Json j{{"k", k},
               {"kappa", rec.ode.kappa},
               {"b", rec.ode.b},
               {"c0", rec.taylor.front()},
               {"c1", c1},
               {"c1Formula", c1Formula},
               {"t0", rec.t0},
               {"taylorTerms", rec.taylor.size()},
               {"overlapDiscrepancy", rec.overlapDiscrepancy},
               {"A_T", rec.value(cfg.T)}};
        bool modeOk = rec.overlapDiscrepancy < 1e-8 && std::abs(c1 - c1Formula) <= 1e-12 * std::max(1.0, std::abs(c1Formula));
        if (rec.ode.kappa < 0.0) {
            bool mono = true;
            double prev = -INFINITY;
            for (double t : grid) {
                const double v = rec.value(t);
                if (!(v > prev) || v < 1.0) mono = false;
                prev = v;
            }
            const bool bound = check_Ak_log_derivative_bound(rec, grid, 1e-9);
            j["increasingFromOne"] = mono;
            j["logDerivativeBound"] = bound;
            modeOk = modeOk && mono && bound;
        }
        const auto basis = harmonic_basis(cfg.m, static_cast<int>(k));
        const ExpansionField f(cfg.m, {ExpansionMode{static_cast<int>(k), basis.front(), recs[k]}});
        double modeRes = 0.0;
        for (const auto& x : pts) modeRes = std::max(modeRes, std::abs(linearized_expander_operator(f, cfg.alpha, x)));
        j["modeResidualMax"] = modeRes;
        j["harmonicDimension"] = basis.size();
        modeOk = modeOk && modeRes < 1e-6;
        j["pass"] = modeOk;
        ok = ok && modeOk;
        modes.push_back(j);
        for (double t : grid) {
            const Eigen::Vector2d s = rec.eval(t);
            out.table.rows.push_back({static_cast<int>(k), t, s(0), s(1)});
        }
    }
    out.report["m"] = cfg.m;
    out.report["alpha"] = cfg.alpha;
    out.report["T"] = cfg.T;
    out.report["weight"] = cfg.weight == ModeWeight::RPowMinusMMinus1 ? "printed" : "consistent";
    out.report["weightExponent"] = -(cfg.weight == ModeWeight::RPowMinusMMinus1 ? cfg.m + 1 : cfg.m + 2);
    out.report["modes"] = modes;
    out.exitCode = ok ? kExitPass : kExitCheckFailure;
    finalize_report(out, "expansion");
    return out;
}

namespace {

/// Fourth-order FD Jacobian J(i, j) = ∂_i λ̃_j in the coordinates (x, y).
Eigen::MatrixXd liouvilleJacobian(const PlumbingChart& chart, const DarbouxCoords& d) {
    const auto m = static_cast<int>(d.x.size());
    const double h = 1e-4 * (1.0 + std::sqrt(d.x.squaredNorm() + d.y.squaredNorm()));
    Eigen::MatrixXd J(2 * m, 2 * m);
    for (int i = 0; i < 2 * m; ++i) {
        auto at = [&](double s) {
            DarbouxCoords e = d;
            if (i < m) e.x(i) += s * h;
            else e.y(i - m) += s * h;
            return liouville_tilde_covector(chart, e);
        };
        J.row(i) = ((-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h)).transpose();
    }
    return J;
}

DarbouxCoords pointWithLevel(Rng& rng, int m, double s) {
    std::uniform_real_distribution<double> u(0.0, 3.0);
    const double small = u(rng);
    DarbouxCoords d{random_sphere_point(rng, m), random_sphere_point(rng, m)};
    if (s >= 0.0) {
        d.y *= small;
        d.x *= std::sqrt(s + small * small);
    } else {
        d.x *= small;
        d.y *= std::sqrt(small * small - s);
    }
    return d;
}

}  // namespace

CommandResult cmd_plumbing(const PlumbingConfig& cfg) {
    std::shared_ptr<LawlorNeck> neck;
    std::vector<double> phi = cfg.phi;
    if (!cfg.a.empty()) {
        neck = std::make_shared<LawlorNeck>(LawlorParams::make(cfg.a));
        if (phi.empty()) phi = neck->angles().phis.phis();
    }
    if (phi.empty()) phi.assign(static_cast<std::size_t>(cfg.m), kPi / cfg.m);
    const PlumbingChart chart = PlumbingChart::make(AngleVector::make(phi), cfg.T);
    const int m = chart.m();
    Rng rng(cfg.seed);

    // Chart round trip over r ∈ [0.5, 10⁶].
    double chartErr = 0.0;
    for (int i = 0; i < 200; ++i) {
        const double r = 0.5 * std::pow(2e6, i / 199.0);
        const RVector x = r * random_sphere_point(rng, m);
        chartErr = std::max(chartErr, (sphere_chart_inverse(sphere_chart(x)) - x).norm() / r);
    }

    // Darboux coordinates: round trip and ω = Σdx∧dy.
    double darbouxErr = 0.0, pullbackErr = 0.0;
    std::normal_distribution<double> n(0.0, 1.0);
    auto randomC = [&] {
        CVector v(m);
        for (int j = 0; j < m; ++j) v(j) = Complex(n(rng), n(rng));
        return v;
    };
    for (int i = 0; i < cfg.samples; ++i) {
        const CmPoint p = CmPoint::make(randomC());
        const CmPoint back = from_darboux(to_darboux(p, chart), chart);
        darbouxErr = std::max(darbouxErr, (back.coords - p.coords).norm() / std::max(1.0, p.coords.norm()));
        const CVector u = randomC(), v = randomC();
        const RVector du = darboux_tangent(u, chart), dv = darboux_tangent(v, chart);
        const double flat = du.head(m).dot(dv.tail(m)) - du.tail(m).dot(dv.head(m));
        pullbackErr = std::max(pullbackErr, std::abs(flat - symplectic_form(u, v)));
    }

    // dλ̃ = ω by finite differences, across the three regions of η.
    const double T = chart.T();
    const std::vector<std::pair<double, double>> bands = {
        {-0.9 * T, 0.9 * T}, {1.05 * T, 1.95 * T}, {-1.95 * T, -1.05 * T}, {2.05 * T, 4.0 * T}, {-4.0 * T, -2.05 * T}};
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    for (int j = 0; j < m; ++j) {
        omega(j, m + j) = 1.0;
        omega(m + j, j) = -1.0;
    }
    double dLambdaErr = 0.0, plateauErr = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
        const auto& band = bands[static_cast<std::size_t>(i) % bands.size()];
        std::uniform_real_distribution<double> level(band.first, band.second);
        const double s = level(rng);
        const DarbouxCoords d = pointWithLevel(rng, m, s);
        const Eigen::MatrixXd J = liouvilleJacobian(chart, d);
        dLambdaErr = std::max(dLambdaErr, (J - J.transpose() - omega).cwiseAbs().maxCoeff());
        // Plateau forms: λ, −Σy dx, Σx dy.
        RVector expected(2 * m);
        if (std::abs(s) <= T) expected << -0.5 * d.y, 0.5 * d.x;
        else if (s >= 2.0 * T) expected << -d.y, RVector::Zero(m);
        else if (s <= -2.0 * T) expected << RVector::Zero(m), d.x;
        else continue;
        plateauErr = std::max(plateauErr, (liouville_tilde_covector(chart, d) - expected).cwiseAbs().maxCoeff() /
                                              std::max(1.0, expected.cwiseAbs().maxCoeff()));
    }

    // Compactified graph values: r^{2−m}, and the neck end when given.
    const std::vector<double> rts = {0.2, 0.1, 0.05};
    const RVector dir = random_sphere_point(rng, m);
    auto decay = [&](const FieldPtr& f) {
        const CompactifiedField cf(f, 2.0 - m);
        Json vals = Json::array(), grads = Json::array();
        bool mono = true;
        double prevV = INFINITY, prevG = INFINITY;
        for (double rt : rts) {
            const RVector xt = rt * dir;
            const double v = std::abs(cf.value(xt));
            const double g = fd_gradient(cf, xt, 1e-4 * rt).norm();
            vals.push_back(v);
            grads.push_back(g);
            mono = mono && v < prevV && g < prevG;
            prevV = v;
            prevG = g;
        }
        mono = mono && cf.value(RVector::Zero(m)) == 0.0;
        return Json{{"rTilde", rts}, {"absValue", vals}, {"gradientNorm", grads}, {"monotone", mono}};
    };
    Json decayJson = {{"radialPower", decay(std::make_shared<RadialPowerField>(m, 2.0 - m))}};
    bool ok = chartErr < 1e-12 && darbouxErr < 1e-12 && pullbackErr < 1e-10 && dLambdaErr < 1e-6 && plateauErr < 1e-12 &&
              decayJson["radialPower"]["monotone"].get<bool>();
    if (neck) {
        decayJson["neckEnd"] = decay(std::make_shared<NeckEndGraph>(neck->profileEngine()));
        ok = ok && decayJson["neckEnd"]["monotone"].get<bool>();
        // h restricted to the neck along the Π₀ end.
        Json hs = Json::array();
        const RVector x = random_sphere_point(rng, m);
        for (double y : {-1e2, -1e3, -1e4}) {
            const LagrangianSample s = neck->point(NeckPoint::make(y, x));
            hs.push_back(Json{{"y", y}, {"h", plumbing_h(chart, to_darboux(s.point, chart))}});
        }
        decayJson["neckEndH"] = hs;
    }

    CommandResult out;
    out.report["m"] = m;
    out.report["phi"] = phi;
    out.report["T"] = T;
    out.report["samples"] = cfg.samples;
    out.report["seed"] = cfg.seed;
    out.report["chartRoundTripMax"] = chartErr;
    out.report["darbouxRoundTripMax"] = darbouxErr;
    out.report["omegaPullbackMax"] = pullbackErr;
    out.report["dLambdaTildeMinusOmegaMax"] = dLambdaErr;
    out.report["plateauFormMax"] = plateauErr;
    out.report["decay"] = decayJson;
    out.exitCode = ok ? kExitPass : kExitCheckFailure;
    finalize_report(out, "plumbing");
    return out;
}

CommandResult cmd_floer(const Json& document) {
    const FloerDocument doc = parse_floer_document(document);
    if (doc.slPair && !doc.m) throw PreconditionError("slPair complexes need m");
    CommandResult out;
    out.report["generators"] = doc.generators.size();
    try {
        const FloerComplexZ2 cx = build_complex(doc.generators, doc.counts);
        const auto chain = chain_dims(cx);
        const auto hf = cohomology_dims(cx);
        out.report["valid"] = true;
        out.report["chainDims"] = mapToJson(chain);
        out.report["cohomology"] = mapToJson(hf);
        out.report["eulerChain"] = euler_characteristic(chain);
        out.report["eulerCohomology"] = euler_characteristic(hf);
        out.report["degreeZeroIdentity"] = verify_degree_zero_identity(cx);
        Json warn = Json::array();
        for (const auto& [p, q] : area_warnings(cx)) warn.push_back(Json::array({p, q}));
        out.report["areaWarnings"] = warn;
        bool ok = true;
        if (doc.m) {
            out.report["m"] = *doc.m;
            out.report["expectedSphereCohomology"] = mapToJson(expected_sphere_cohomology(*doc.m));
            out.report["matchesSphere"] = hf == expected_sphere_cohomology(*doc.m);
            if (doc.slPair) {
                const auto bad = degree_window_violations(cx, *doc.m);
                out.report["degreeWindowViolations"] = bad;
                ok = bad.empty();
            }
        }
        out.exitCode = ok ? kExitPass : kExitCheckFailure;
    } catch (const PreconditionError& e) {
        out.report["valid"] = false;
        out.report["error"] = e.what();
        out.exitCode = kExitCheckFailure;
    }
    finalize_report(out, "floer");
    return out;
}

}  // namespace slag::cli
