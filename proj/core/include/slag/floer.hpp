#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "slag/cm_geometry.hpp"
#include "slag/gf2.hpp"

namespace slag {

/// Compactification points carry fixed degrees; ordinary points are interior intersections.
enum class GeneratorTag { Ordinary, Infinity0, InfinityPhi };

struct Generator {
    std::string id;
    int degree = 0;
    double fL = 0.0;   // potential of L at the point
    double fLp = 0.0;  // potential of L′ at the point
    GeneratorTag tag = GeneratorTag::Ordinary;
};

using GeneratorPair = std::pair<std::string, std::string>;
/// N_{p,q} mod 2 for dp = Σ N_{p,q}·q. Missing pairs count as 0.
using StripCounts = std::map<GeneratorPair, int>;

/// Free GF(2)-module on intersection points with a degree-raising differential.
class FloerComplexZ2 {
public:
    const std::vector<Generator>& generators() const { return gens_; }
    /// Entry (p, q) is N_{p,q}; d(p) is row p.
    const BitMatrix& differential() const { return d_; }
    int size() const { return static_cast<int>(gens_.size()); }
    int index(const std::string& id) const;
    /// Indices of generators of degree k, in input order.
    std::vector<int> degreeIndices(int k) const;
    /// Distinct degrees, ascending.
    std::vector<int> degrees() const;

private:
    friend FloerComplexZ2 build_complex(std::vector<Generator>, const StripCounts&);
    friend FloerComplexZ2 complex_from_matrix(std::vector<Generator>, const BitMatrix&);
    std::vector<Generator> gens_;
    std::map<std::string, int> index_;
    BitMatrix d_;
};

/// Throws PreconditionError on duplicate ids, unknown ids, counts outside {0, 1},
/// counts between degrees not differing by +1, or d∘d ≠ 0.
FloerComplexZ2 build_complex(std::vector<Generator> generators, const StripCounts& counts);
/// Same checks, with the differential given as a matrix in generator order.
FloerComplexZ2 complex_from_matrix(std::vector<Generator> generators, const BitMatrix& d);

/// dim ker d − rank d per degree; degrees with zero cohomology are omitted.
std::map<int, int> cohomology_dims(const FloerComplexZ2& cx);
/// dim CF^k per degree.
std::map<int, int> chain_dims(const FloerComplexZ2& cx);
int euler_characteristic(const std::map<int, int>& dims);

/// {0: 1, m: 1}.
std::map<int, int> expected_sphere_cohomology(int m);

/// A degree-0 generator exists and HF⁰ ≠ 0.
bool verify_degree_zero_identity(const FloerComplexZ2& cx);

/// Differential entries (p, q) whose strip area f_L(q) − f_L(p) + f_L′(p) − f_L′(q) is not positive.
std::vector<GeneratorPair> area_warnings(const FloerComplexZ2& cx);

/// Ids violating the special Lagrangian degree window: ordinary generators need
/// 0 < degree < m, compactification generators need degree ∈ {0, m}.
std::vector<std::string> degree_window_violations(const FloerComplexZ2& cx, int m);

/// The one-point complex of the plane pair (Π₀, Π_φ) graded by θ = 0 and θ = Σφ,
/// or of (Π_φ, Π₀) when reversed. The degree comes from the Maslov calculus.
FloerComplexZ2 sphere_pair_complex(const AngleVector& phis, bool reversed);

}  // namespace slag
