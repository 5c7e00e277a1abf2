#include <random>

#include <benchmark/benchmark.h>

#include "slag/cm_geometry.hpp"
#include "slag/gf2.hpp"
#include "slag/jlt.hpp"
#include "slag/lawlor.hpp"
#include "slag/radial_modes.hpp"

using namespace slag;

namespace {

std::vector<double> params(int m) {
    std::vector<double> a;
    for (int i = 0; i < m; ++i) a.push_back(0.5 + 0.75 * i);
    return a;
}

void BM_lawlor_angles(benchmark::State& s) {
    const LawlorParams p = LawlorParams::make(params(static_cast<int>(s.range(0))));
    for (auto _ : s) benchmark::DoNotOptimize(lawlor_angles(p));
}
BENCHMARK(BM_lawlor_angles)->DenseRange(3, 7, 2);

void BM_jlt_angles(benchmark::State& s) {
    const JltParams p = JltParams::make(1.0, params(static_cast<int>(s.range(0))));
    for (auto _ : s) benchmark::DoNotOptimize(jlt_angles(p));
}
BENCHMARK(BM_jlt_angles)->DenseRange(3, 7, 2);

void BM_lawlor_invert(benchmark::State& s) {
    const LawlorAngles target = lawlor_angles(LawlorParams::make(params(static_cast<int>(s.range(0)))));
    InversionOptions o;
    o.initialGuess = std::vector<double>(static_cast<std::size_t>(s.range(0)), 1.0);
    for (auto _ : s) benchmark::DoNotOptimize(lawlor_invert(target, o));
}
BENCHMARK(BM_lawlor_invert)->Arg(3)->Arg(5);

void BM_solve_Ak(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(solve_Ak(3, static_cast<int>(s.range(0)), 1.0, 2.0));
}
BENCHMARK(BM_solve_Ak)->Arg(0)->Arg(4)->Arg(8);

void BM_characteristic_angles(benchmark::State& s) {
    const int m = static_cast<int>(s.range(0));
    std::mt19937_64 g(7);
    std::normal_distribution<double> n;
    CMatrix z(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) z(i, j) = Complex(n(g), n(g));
    const CMatrix u = Eigen::HouseholderQR<CMatrix>(z).householderQ() * CMatrix::Identity(m, m);
    const LagrangianPlane a = LagrangianPlane::real(m), b = LagrangianPlane::fromUnitary(u);
    for (auto _ : s) benchmark::DoNotOptimize(characteristic_angles(a, b));
}
BENCHMARK(BM_characteristic_angles)->Arg(3)->Arg(8)->Arg(32);

void BM_bitmatrix_rank(benchmark::State& s) {
    const int n = static_cast<int>(s.range(0));
    std::mt19937_64 g(11);
    std::bernoulli_distribution b(0.5);
    BitMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a.set(i, j, b(g));
    for (auto _ : s) benchmark::DoNotOptimize(a.rank());
}
BENCHMARK(BM_bitmatrix_rank)->Arg(64)->Arg(256)->Arg(1024);

}  // namespace
BENCHMARK_MAIN();
