#include <benchmark/benchmark.h>

#include "deloc/groups.hpp"
#include "deloc/heat_trace.hpp"
#include "deloc/hyperbolic.hpp"
#include "deloc/invariants.hpp"
#include "deloc/mapping_torus.hpp"

namespace {

using namespace deloc;

hyperbolic::GeodesicClass sample_class(int n) {
    std::vector<double> angles;
    for (int i = 0; i < n; ++i) angles.push_back(0.4 + 0.3 * i);
    return hyperbolic::make_geodesic_class(n, 1, 1.1, angles);
}

void BM_TorsionClosed(benchmark::State& state) {
    hyperbolic::GeodesicClass g = sample_class(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hyperbolic::torsion_closed(g));
}
BENCHMARK(BM_TorsionClosed)->Arg(1)->Arg(3);

void BM_TorsionQuadrature(benchmark::State& state) {
    hyperbolic::GeodesicClass g = sample_class(static_cast<int>(state.range(0)));
    std::vector<HeatTraceSampler> samplers;
    for (int p = 0; p <= 2 * g.n + 1; ++p)
        samplers.push_back(hyperbolic::selberg_heat_trace(g, p));
    TorsionSeries series = assemble_torsion_series(samplers, Complex{0.0, 0.0});
    for (auto _ : state)
        benchmark::DoNotOptimize(torsion_integral(series, 1e-10));
}
BENCHMARK(BM_TorsionQuadrature)->Arg(1)->Arg(3);

void BM_FourierOracle(benchmark::State& state) {
    Eigen::MatrixXcd m(2, 2);
    m << 2.0, 1.0, 1.0, 1.0;
    torus::CohomologyAction action = torus::make_action({m});
    for (auto _ : state)
        benchmark::DoNotOptimize(torus::fourier_torsion_oracle(action, 2, 256));
}
BENCHMARK(BM_FourierOracle);

void BM_HeatTrace(benchmark::State& state) {
    heat::LaurentMatrix d;
    d.rows = 1;
    d.cols = 1;
    d.entries = {{{{1}, Complex(1.0, 0.0)}, {{0}, Complex(-1.0, 0.0)}}};
    heat::LaurentComplex x = heat::make_laurent_complex(1, {1, 1}, {d});
    for (auto _ : state)
        benchmark::DoNotOptimize(
            heat::delocalized_heat_trace(x, 0, {1}, 4.0,
                                         state.range(0)).value);
}
BENCHMARK(BM_HeatTrace)->Arg(64)->Arg(512);

void BM_CharacterTable(benchmark::State& state) {
    groups::FiniteGroup g = state.range(0) == 0 ? groups::symmetric_group(4)
                                                : groups::dihedral_group(24);
    for (auto _ : state) benchmark::DoNotOptimize(groups::character_table(g));
}
BENCHMARK(BM_CharacterTable)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
