#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "slag/errors.hpp"
#include "slag_cli/commands.hpp"

namespace {

constexpr const char* kUnitsNote =
    "Angles are in radians. The invariant A and strip areas are in the area units of the\n"
    "symplectic form omega = sum dx_j ^ dy_j on C^m.\n"
    "Exit codes: 0 all checks pass, 1 a check failed, 2 usage or domain error.\n"
    "SLAG_SEED overrides --seed. SLAG_FAULT_THETA=eps rescales the expander phase term by 1+eps.";

std::string readInput(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

slag::ModeWeight parseWeight(const std::string& s) {
    if (s == "printed") return slag::ModeWeight::RPowMinusMMinus1;
    if (s == "consistent") return slag::ModeWeight::RPowMinusMMinus2;
    throw std::invalid_argument("weight must be printed or consistent");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace slag::cli;

    CLI::App app{"Special Lagrangian necks, expanders and their Floer-theoretic invariants."};
    app.footer(kUnitsNote);
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json";
    std::uint64_t seed = kDefaultSeed;
    unsigned workers = 0;
    app.add_option("--format", format, "Output format: json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--workers", workers, "Worker threads for sweeps (0 = hardware concurrency)");

    LawlorConfig lawlor;
    auto* cLawlor = app.add_subcommand("lawlor", "Lawlor neck: angles, invariant A and special Lagrangian residuals");
    cLawlor->add_option("--a", lawlor.a, "Positive parameters a_1,...,a_m (m >= 3)")->delimiter(',')->required();
    cLawlor->add_option("--samples", lawlor.samples, "Residual samples");
    cLawlor->add_option("--tol", lawlor.tol, "Residual tolerance");

    ExpanderConfig expander;
    auto* cExpander = app.add_subcommand("expander", "Expander L^alpha_phi: angles, invariant and expander residual");
    cExpander->add_option("--alpha", expander.alpha, "Expander scale alpha > 0")->required();
    cExpander->add_option("--a", expander.a, "Positive parameters a_1,...,a_m")->delimiter(',')->required();
    cExpander->add_option("--samples", expander.samples, "Residual samples");
    cExpander->add_option("--potential-factor", expander.factor, "Constant c in theta = -c*alpha*f (default 2)");
    cExpander->add_option("--tol", expander.tol, "Residual tolerance");

    InvertConfig invert;
    auto* cInvert = app.add_subcommand("invert", "Recover a from target angles by Newton iteration");
    cInvert->add_option("--mode", invert.mode, "lawlor or jlt")->required()->check(CLI::IsMember({"lawlor", "jlt"}));
    cInvert->add_option("--phi", invert.phi, "Target angles in (0, pi)")->delimiter(',')->required();
    cInvert->add_option("--A", invert.A, "Target invariant (lawlor mode)");
    cInvert->add_option("--alpha", invert.alpha, "Expander scale (jlt mode)");
    cInvert->add_option("--tol", invert.tol, "Forward residual tolerance");
    cInvert->add_option("--max-iterations", invert.maxIterations, "Newton iteration budget");

    VerifyConfig verify;
    std::string conventions = "consistent";
    auto* cVerify = app.add_subcommand("verify", "Run the property battery and emit a pass/fail matrix");
    cVerify->add_option("--only", verify.only, "Comma-separated subset of checks")->delimiter(',');
    cVerify->add_option("--conventions", conventions,
                        "consistent (c = 2, weight r^{-2-m}) or printed (c = 1/2, weight r^{-1-m})")
        ->check(CLI::IsMember({"consistent", "printed"}));
    cVerify->add_flag_callback(
        "--list",
        [] {
            for (const auto& n : verify_check_names()) std::cout << n << '\n';
            std::exit(kExitPass);
        },
        "List check names and exit");

    ExpansionConfig expansion;
    std::string weight = "consistent";
    auto* cExpansion = app.add_subcommand("expansion", "Radial factors A_k of the linearized expander modes");
    cExpansion->add_option("--m", expansion.m, "Dimension m >= 3");
    cExpansion->add_option("--k-max", expansion.kMax, "Largest harmonic degree");
    cExpansion->add_option("--alpha", expansion.alpha, "Expander scale alpha > 0");
    cExpansion->add_option("--T", expansion.T, "Right end of t = r^{-2}");
    cExpansion->add_option("--grid", expansion.gridPoints, "Table points per mode");
    cExpansion->add_option("--weight", weight, "printed (r^{-1-m}) or consistent (r^{-2-m})")
        ->check(CLI::IsMember({"printed", "consistent"}));

    PlumbingConfig plumbing;
    auto* cPlumbing = app.add_subcommand("plumbing", "Plumbing chart, Liouville form and decay checks");
    cPlumbing->add_option("--phi", plumbing.phi, "Chart angles")->delimiter(',');
    cPlumbing->add_option("--a", plumbing.a, "Lawlor neck for the decay checks")->delimiter(',');
    cPlumbing->add_option("--m", plumbing.m, "Dimension when neither --phi nor --a is given");
    cPlumbing->add_option("--T", plumbing.T, "Cutoff scale of the plumbing function");
    cPlumbing->add_option("--samples", plumbing.samples, "Samples per check");

    std::string floerPath;
    auto* cFloer = app.add_subcommand("floer", "Z/2 Floer cohomology of a complex given as JSON");
    cFloer->add_option("file", floerPath, "Complex document, or - for stdin")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        const RunEnvironment env = read_environment();
        if (env.seed) seed = *env.seed;
        const Format fmt = parse_format(format);

        CommandResult result;
        if (cLawlor->parsed()) {
            lawlor.seed = seed;
            lawlor.workers = workers;
            result = cmd_lawlor(lawlor);
        } else if (cExpander->parsed()) {
            expander.seed = seed;
            expander.faultTheta = env.faultTheta;
            result = cmd_expander(expander);
        } else if (cInvert->parsed()) {
            result = cmd_invert(invert);
        } else if (cVerify->parsed()) {
            verify.seed = seed;
            verify.faultTheta = env.faultTheta;
            verify.printedConventions = conventions == "printed";
            verify.workers = workers;
            result = cmd_verify(verify);
        } else if (cExpansion->parsed()) {
            expansion.weight = parseWeight(weight);
            expansion.seed = seed;
            expansion.workers = workers;
            result = cmd_expansion(expansion);
        } else if (cPlumbing->parsed()) {
            plumbing.seed = seed;
            result = cmd_plumbing(plumbing);
        } else if (cFloer->parsed()) {
            Json doc;
            try {
                doc = Json::parse(readInput(floerPath));
            } catch (const Json::parse_error& e) {
                throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
            }
            result = cmd_floer(doc);
        }
        std::cout << render(result, fmt);
        return result.exitCode;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const slag::GeometryError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const slag::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << " (best residual " << e.bestResidual() << ")\n";
        return kExitCheckFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheckFailure;
    }
}
