#include "slag/floer.hpp"

#include <set>

#include "slag/errors.hpp"

namespace slag {

int FloerComplexZ2::index(const std::string& id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) throw PreconditionError("unknown generator '" + id + "'");
    return it->second;
}

std::vector<int> FloerComplexZ2::degreeIndices(int k) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (gens_[static_cast<std::size_t>(i)].degree == k) out.push_back(i);
    return out;
}

std::vector<int> FloerComplexZ2::degrees() const {
    std::set<int> s;
    for (const auto& g : gens_) s.insert(g.degree);
    return {s.begin(), s.end()};
}

namespace {

std::map<std::string, int> indexGenerators(const std::vector<Generator>& gens) {
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (!index.emplace(gens[i].id, static_cast<int>(i)).second)
            throw PreconditionError("duplicate generator id '" + gens[i].id + "'");
    return index;
}

void validateDifferential(const std::vector<Generator>& gens, const BitMatrix& d) {
    const auto n = static_cast<int>(gens.size());
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            if (d.get(p, q) && gens[static_cast<std::size_t>(q)].degree != gens[static_cast<std::size_t>(p)].degree + 1)
                throw PreconditionError("strip count between '" + gens[static_cast<std::size_t>(p)].id + "' and '" +
                                        gens[static_cast<std::size_t>(q)].id + "' does not raise degree by 1");
    if (!(d * d).isZero()) throw PreconditionError("differential does not square to zero");
}

}  // namespace

FloerComplexZ2 build_complex(std::vector<Generator> generators, const StripCounts& counts) {
    FloerComplexZ2 cx;
    cx.index_ = indexGenerators(generators);
    const auto n = static_cast<int>(generators.size());
    cx.d_ = BitMatrix(n, n);
    for (const auto& [pq, v] : counts) {
        if (v != 0 && v != 1) throw PreconditionError("strip counts must be 0 or 1 mod 2");
        const auto ip = cx.index_.find(pq.first);
        const auto iq = cx.index_.find(pq.second);
        if (ip == cx.index_.end() || iq == cx.index_.end())
            throw PreconditionError("strip count names an unknown generator");
        cx.d_.set(ip->second, iq->second, v == 1);
    }
    validateDifferential(generators, cx.d_);
    cx.gens_ = std::move(generators);
    return cx;
}

FloerComplexZ2 complex_from_matrix(std::vector<Generator> generators, const BitMatrix& d) {
    const auto n = static_cast<int>(generators.size());
    if (d.rows() != n || d.cols() != n) throw PreconditionError("differential size differs from generator count");
    FloerComplexZ2 cx;
    cx.index_ = indexGenerators(generators);
    validateDifferential(generators, d);
    cx.d_ = d;
    cx.gens_ = std::move(generators);
    return cx;
}

std::map<int, int> chain_dims(const FloerComplexZ2& cx) {
    std::map<int, int> out;
    for (const auto& g : cx.generators()) ++out[g.degree];
    return out;
}

std::map<int, int> cohomology_dims(const FloerComplexZ2& cx) {
    std::map<int, int> out;
    for (int k : cx.degrees()) {
        const std::vector<int> here = cx.degreeIndices(k);
        const std::vector<int> next = cx.degreeIndices(k + 1);
        const std::vector<int> prev = cx.degreeIndices(k - 1);
        const int rankOut = next.empty() ? 0 : cx.differential().select(here, next).rank();
        const int rankIn = prev.empty() ? 0 : cx.differential().select(prev, here).rank();
        const int dim = static_cast<int>(here.size()) - rankOut - rankIn;
        if (dim != 0) out[k] = dim;
    }
    return out;
}

int euler_characteristic(const std::map<int, int>& dims) {
    int chi = 0;
    for (const auto& [k, d] : dims) chi += (k % 2 == 0) ? d : -d;
    return chi;
}

std::map<int, int> expected_sphere_cohomology(int m) {
    if (m < 3) throw PreconditionError("m must be at least 3");
    return {{0, 1}, {m, 1}};
}

bool verify_degree_zero_identity(const FloerComplexZ2& cx) {
    if (cx.degreeIndices(0).empty()) return false;
    const auto h = cohomology_dims(cx);
    const auto it = h.find(0);
    return it != h.end() && it->second > 0;
}

std::vector<GeneratorPair> area_warnings(const FloerComplexZ2& cx) {
    std::vector<GeneratorPair> out;
    const auto& g = cx.generators();
    for (int p = 0; p < cx.size(); ++p)
        for (int q = 0; q < cx.size(); ++q) {
            if (!cx.differential().get(p, q)) continue;
            const Generator& gp = g[static_cast<std::size_t>(p)];
            const Generator& gq = g[static_cast<std::size_t>(q)];
            const double area = strip_area({0.0, 0.0, gp.fL, gp.fLp}, {0.0, 0.0, gq.fL, gq.fLp});
            if (!(area > 0.0)) out.emplace_back(gp.id, gq.id);
        }
    return out;
}

std::vector<std::string> degree_window_violations(const FloerComplexZ2& cx, int m) {
    std::vector<std::string> out;
    for (const auto& g : cx.generators()) {
        const bool ok = g.tag == GeneratorTag::Ordinary ? (g.degree > 0 && g.degree < m)
                                                         : (g.degree == 0 || g.degree == m);
        if (!ok) out.push_back(g.id);
    }
    return out;
}

FloerComplexZ2 sphere_pair_complex(const AngleVector& phis, bool reversed) {
    const LagrangianPlane p0 = LagrangianPlane::real(phis.size());
    const LagrangianPlane pphi = LagrangianPlane::fromAngles(phis.phis());
    const double t0 = 0.0, tphi = phis.sum();
    const AngleVector ang = reversed ? characteristic_angles(pphi, p0) : characteristic_angles(p0, pphi);
    const GradedPointPair pair = reversed ? GradedPointPair{tphi, t0, 0.0, 0.0} : GradedPointPair{t0, tphi, 0.0, 0.0};
    Generator g;
    g.id = "0";
    g.degree = maslov_degree(ang, pair);
    return build_complex({g}, {});
}

}  // namespace slag
