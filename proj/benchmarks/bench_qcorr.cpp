#include <array>
#include <cmath>

#include <benchmark/benchmark.h>

#include <qcorr/densities.hpp>
#include <qcorr/information.hpp>
#include <qcorr/orbitals.hpp>
#include <qcorr/superposition.hpp>

using namespace qcorr;

namespace {

Configuration box_state(SymmetryClass sym, Space space) {
    return {ModelParams::box(1.0), {1, 2, 3}, sym, space};
}

void BM_BoxMomentumOrbital(benchmark::State& state) {
    double p = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_box_momentum(3, 1.0, p));
        p += 0.37;
    }
}
BENCHMARK(BM_BoxMomentumOrbital);

void BM_OscillatorLadder(benchmark::State& state) {
    std::array<Amplitude, 64> row{};
    for (auto _ : state) {
        eval_ho_ladder(1.0, 0.7, Space::Position, std::span<Amplitude>(row.data(), state.range(0)));
        benchmark::DoNotOptimize(row);
    }
}
BENCHMARK(BM_OscillatorLadder)->Arg(8)->Arg(64);

void BM_DensityPoint(benchmark::State& state) {
    const WaveFunction wf = WaveFunction::build(box_state(SymmetryClass::Antisymmetric, Space::Position));
    const std::array<double, 3> x{0.2, 0.5, 0.7};
    for (auto _ : state) {
        benchmark::DoNotOptimize(wf.density(x));
    }
}
BENCHMARK(BM_DensityPoint);

void BM_ClosedPairDensity(benchmark::State& state) {
    const WaveFunction wf = WaveFunction::build(box_state(SymmetryClass::Symmetric, Space::Momentum));
    const ReducedDensity gamma = reduce_to_pair(wf);
    const std::array<double, 2> p{1.5, -4.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamma(p));
    }
}
BENCHMARK(BM_ClosedPairDensity);

void BM_FullEntropy(benchmark::State& state) {
    const WaveFunction wf = WaveFunction::build(box_state(SymmetryClass::Antisymmetric, Space::Position));
    QuadratureScheme scheme;
    scheme.panels_3d = static_cast<int>(state.range(0));
    scheme.enforce_convergence = false;
    for (auto _ : state) {
        benchmark::DoNotOptimize(entropy(wf, scheme));
    }
}
BENCHMARK(BM_FullEntropy)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_PositionReport(benchmark::State& state) {
    const WaveFunction wf = WaveFunction::build(box_state(SymmetryClass::Antisymmetric, Space::Position));
    for (auto _ : state) {
        benchmark::DoNotOptimize(information_report(wf, QuadratureScheme::defaults(Space::Position)));
    }
}
BENCHMARK(BM_PositionReport)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_SuperpositionReport(benchmark::State& state) {
    const WaveFunction wf =
        build_superposition(SuperpositionSpec::box_pair(SymmetryClass::Antisymmetric, Space::Position));
    QuadratureScheme scheme;
    scheme.panels = scheme.panels_3d = 16;
    scheme.enforce_convergence = false;
    for (auto _ : state) {
        benchmark::DoNotOptimize(information_report(wf, scheme));
    }
}
BENCHMARK(BM_SuperpositionReport)->Unit(benchmark::kMillisecond)->Iterations(2);

} // namespace

BENCHMARK_MAIN();
