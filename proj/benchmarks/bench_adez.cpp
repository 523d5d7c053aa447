#include <benchmark/benchmark.h>

#include "adez/theta.hpp"
#include "adez/zeta.hpp"

using namespace adez;

namespace {

void BM_EnumerateE8(benchmark::State& state) {
    DiscriminantData data = discriminant_data(LatticeSpec(Family::E, 8));
    const Rat bound(state.range(0));
    for (auto _ : state) {
        NormSpectrum sp = enumerate_norms(data, 0, bound);
        benchmark::DoNotOptimize(sp.entries.data());
    }
}
BENCHMARK(BM_EnumerateE8)->Arg(8)->Arg(16)->Arg(24);

void BM_EnumerateD8Coset(benchmark::State& state) {
    DiscriminantData data = discriminant_data(LatticeSpec(Family::D, 8));
    for (auto _ : state) {
        NormSpectrum sp = enumerate_norms(data, 1, Rat(20));
        benchmark::DoNotOptimize(sp.entries.data());
    }
}
BENCHMARK(BM_EnumerateD8Coset);

void BM_BuildWeil(benchmark::State& state) {
    DiscriminantData data =
        discriminant_data(LatticeSpec(Family::A, static_cast<int>(state.range(0))));
    for (auto _ : state) {
        WeilRep rep = build_weil(data);
        benchmark::DoNotOptimize(rep.rho_s.data());
    }
}
BENCHMARK(BM_BuildWeil)->Arg(4)->Arg(8)->Arg(16)->Arg(24);

void BM_ThetaA4(benchmark::State& state) {
    DiscriminantData data = discriminant_data(LatticeSpec(Family::A, 4));
    auto spectra = shared_spectra(data, Rat(30));
    const Complex tau(0.5, 1.0);
    for (auto _ : state) {
        ThetaEvaluation ev = theta_vector(*spectra, tau, HalfPlane::upper_tau);
        benchmark::DoNotOptimize(ev.values.data());
    }
}
BENCHMARK(BM_ThetaA4);

void BM_XiContinuedA2(benchmark::State& state) {
    DiscriminantData data = discriminant_data(LatticeSpec(Family::A, 2));
    WeilRep rep = build_weil(data);
    const Complex s(0.8, 0.3);
    for (auto _ : state) {
        XiEvaluation ev = xi_continued(data, rep, s, 1e-10);
        benchmark::DoNotOptimize(ev.xi.data());
    }
}
BENCHMARK(BM_XiContinuedA2);

void BM_ZetaDirectD4(benchmark::State& state) {
    DiscriminantData data = discriminant_data(LatticeSpec(Family::D, 4));
    auto spectra = shared_spectra(data, Rat(36));
    const Complex s(3.5, 0.5);
    for (auto _ : state) {
        ZetaEvaluation ev = zeta_direct(*spectra, s);
        benchmark::DoNotOptimize(ev.zeta.data());
    }
}
BENCHMARK(BM_ZetaDirectD4);

}  // namespace

BENCHMARK_MAIN();
