#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "slag/cm_geometry.hpp"
#include "slag/radial_modes.hpp"
#include "slag_cli/report.hpp"

namespace slag::cli {

inline constexpr std::uint64_t kDefaultSeed = 20140201;

/// SLAG_SEED overrides the seed; SLAG_FAULT_THETA = ε rescales the arg term of the
/// expander phase by 1 + ε (fault injection).
struct RunEnvironment {
    std::optional<std::uint64_t> seed;
    double faultTheta = 0.0;
};

/// Throws std::invalid_argument on malformed values.
RunEnvironment read_environment();

using Rng = std::mt19937_64;

RVector random_sphere_point(Rng& rng, int m);
/// log-uniform a_k in [lo, hi].
std::vector<double> random_neck_parameters(Rng& rng, int m, double lo = 0.25, double hi = 4.0);
/// Haar-distributed unitary via QR of a complex Gaussian matrix.
CMatrix random_unitary(Rng& rng, int m);

struct LawlorConfig {
    std::vector<double> a;
    int samples = 200;
    std::uint64_t seed = kDefaultSeed;
    double tol = 1e-8;
    unsigned workers = 0;
};
CommandResult cmd_lawlor(const LawlorConfig& cfg);

struct ExpanderConfig {
    double alpha = 0.0;
    std::vector<double> a;
    int samples = 50;
    std::uint64_t seed = kDefaultSeed;
    double factor = kExpanderPotentialFactor;
    double tol = 1e-7;
    double faultTheta = 0.0;
};
CommandResult cmd_expander(const ExpanderConfig& cfg);

struct InvertConfig {
    std::string mode;  // lawlor | jlt
    std::vector<double> phi;
    double A = 0.0;
    double alpha = 0.0;
    double tol = 1e-6;
    int maxIterations = 30;
};
CommandResult cmd_invert(const InvertConfig& cfg);

struct ExpansionConfig {
    int m = 3;
    int kMax = 4;
    double alpha = 1.0;
    double T = 2.0;
    ModeWeight weight = ModeWeight::RPowMinusMMinus2;
    int gridPoints = 100;
    int modePoints = 20;
    std::uint64_t seed = kDefaultSeed;
    unsigned workers = 0;
};
CommandResult cmd_expansion(const ExpansionConfig& cfg);

struct PlumbingConfig {
    std::vector<double> phi;  // chart angles; taken from the neck when a is given
    std::vector<double> a;    // optional Lawlor neck for the decay checks
    int m = 3;
    double T = 100.0;
    int samples = 200;
    std::uint64_t seed = kDefaultSeed;
};
CommandResult cmd_plumbing(const PlumbingConfig& cfg);

/// Runs on a parsed complex document (see floer_io.hpp).
CommandResult cmd_floer(const Json& document);

struct VerifyConfig {
    std::vector<std::string> only;
    std::uint64_t seed = kDefaultSeed;
    double faultTheta = 0.0;
    /// Uses c = ½ and the r^{−1−m} mode weight instead of c = 2 and r^{−2−m}.
    bool printedConventions = false;
    unsigned workers = 0;
};
CommandResult cmd_verify(const VerifyConfig& cfg);
/// Names accepted by verify --only, in run order.
std::vector<std::string> verify_check_names();

}  // namespace slag::cli
