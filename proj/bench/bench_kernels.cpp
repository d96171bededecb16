// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "tmbec/decoherence.hpp"
#include "tmbec/evolution.hpp"
#include "tmbec/gcs.hpp"
#include "tmbec/phase_space.hpp"

using namespace tmbec;

namespace {

const ModelParams kUnequal{0, 0, 2.0, 2.0, 1.5, 1.0};

TwoModeState start_state(double n) {
    const double h = std::sqrt(0.5 * n);
    return coherent_product(CoherentPair({0.0, h}, {h, 0.0}));
}

void BM_evolve_cached(benchmark::State& st) {
    const auto s0 = start_state(static_cast<double>(st.range(0)));
    SpectrumCache cache;
    double t = 0.0;
    for (auto _ : st) benchmark::DoNotOptimize(evolve(s0, kUnequal, t += 0.01, cache));
}

void BM_evolve_serial(benchmark::State& st) {
    const auto s0 = start_state(static_cast<double>(st.range(0)));
    double t = 0.0;
    for (auto _ : st) benchmark::DoNotOptimize(evolve_serial(s0, kUnequal, t += 0.01));
}

SingleModeDensity cat_density() {
    const auto g = make_gcs({5.0, 0.0}, 2.0 * std::numbers::pi / 3.0);
    const GridSpec spec{-8, 8, -8, 8, 2};
    const auto rho = SingleModeDensity::pure(g.amplitudes);
    return rho.padded(std::max(rho.cutoff(), required_cutoff(spec)));
}

void BM_husimi(benchmark::State& st) {
    const auto rho = cat_density();
    const GridSpec spec{-8, 8, -8, 8, static_cast<int>(st.range(0))};
    for (auto _ : st) benchmark::DoNotOptimize(husimi(rho, spec));
}

void BM_husimi_serial(benchmark::State& st) {
    const auto rho = cat_density();
    const GridSpec spec{-8, 8, -8, 8, static_cast<int>(st.range(0))};
    for (auto _ : st) benchmark::DoNotOptimize(husimi_serial(rho, spec));
}

std::vector<double> purity_times() {
    std::vector<double> t(201);
    for (int i = 0; i <= 200; ++i) t[i] = i / 200.0;
    return t;
}

void BM_purity_series(benchmark::State& st) {
    const auto rho = SingleModeDensity::pure(make_gcs({std::sqrt(double(st.range(0))), 0.0}, 0.3).amplitudes);
    const auto times = purity_times();
    for (auto _ : st) benchmark::DoNotOptimize(purity_series(rho, {0.0, 1.0, 0.05}, times));
}

void BM_purity_series_serial(benchmark::State& st) {
    const auto rho = SingleModeDensity::pure(make_gcs({std::sqrt(double(st.range(0))), 0.0}, 0.3).amplitudes);
    const auto times = purity_times();
    for (auto _ : st) benchmark::DoNotOptimize(purity_series_serial(rho, {0.0, 1.0, 0.05}, times));
}

} // namespace

BENCHMARK(BM_evolve_cached)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_evolve_serial)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_husimi)->Arg(101)->Arg(201)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_husimi_serial)->Arg(101)->Arg(201)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_purity_series)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_purity_series_serial)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
