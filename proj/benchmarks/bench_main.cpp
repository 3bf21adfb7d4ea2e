#include <benchmark/benchmark.h>

#include "gsqg/advect.hpp"
#include "gsqg/grid_velocity.hpp"
#include "gsqg/lemmas.hpp"
#include "gsqg/scenario.hpp"
#include "gsqg/velocity.hpp"

using namespace gsqg;

namespace {

ScalarField blowup_datum(double h, double box) {
    const BlowupScenario sc(0.05, Params(0.25, 0.5));
    return build_blowup_datum(sc, 0.025, blowup_grid(h, box, box));
}

}  // namespace

static void BM_VelocityAt(benchmark::State& state) {
    const auto f = blowup_datum(0.05, 4.0);
    const KernelParams kp(0.25);
    const QuadConfig qc;
    for (auto _ : state) benchmark::DoNotOptimize(velocity_at(f, kp, {0.5, 0.3}, qc));
}
BENCHMARK(BM_VelocityAt)->Unit(benchmark::kMillisecond);

// range(0) is the lattice spacing in thousandths
static void BM_GridVelocity(benchmark::State& state) {
    const double h = state.range(0) / 1000.0;
    const auto f = blowup_datum(h, 8.0);
    const GridVelocity gv(f.grid(), f.parity(), KernelParams(0.25));
    for (auto _ : state) benchmark::DoNotOptimize(gv.compute(f));
    state.counters["nodes"] = static_cast<double>(f.values().size());
}
BENCHMARK(BM_GridVelocity)->Arg(100)->Arg(50)->Arg(25)->Unit(benchmark::kMillisecond);

static void BM_Lemma42(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(lemma::lemma42_infimum(0.25));
}
BENCHMARK(BM_Lemma42)->Unit(benchmark::kMillisecond);

static void BM_CriticalAlphaRoot(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(lemma::critical_alpha_root());
}
BENCHMARK(BM_CriticalAlphaRoot)->Unit(benchmark::kMillisecond);

// one recomputed-mode step at h = 0.05: velocity solve, particle push and resampling
static void BM_AdvectStep(benchmark::State& state) {
    const auto f = blowup_datum(0.05, 8.0);
    AdvectOptions o;
    o.T = 0.004;
    o.dt = 0.004;
    o.mode = FieldUpdate::recomputed;
    for (auto _ : state) {
        ParticleSet ps;
        ps.add("p", {0.5, 0.5}, 1.0);
        benchmark::DoNotOptimize(advect(f, KernelParams(0.25), QuadConfig{}, ps, o));
    }
}
BENCHMARK(BM_AdvectStep)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
