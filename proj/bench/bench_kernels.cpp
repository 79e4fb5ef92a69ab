// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "arborlab/exactcore.hpp"
#include "arborlab/kernels.hpp"
#include "arborlab/residue.hpp"
#include "arborlab/tower.hpp"

using namespace arborlab;

namespace {

const exactcore::RationalMap& sample_map() {
    static const auto f = exactcore::parse_map("(x^3-2x+5)/(3x^2+x+7)");
    return f;
}

void BM_FunctionalGraphSerial(benchmark::State& state) {
    const residue::ReducedMap fbar(sample_map(), static_cast<zp::u64>(state.range(0)), false);
    for (auto _ : state) benchmark::DoNotOptimize(residue::functional_graph_serial(fbar));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FunctionalGraphOmp(benchmark::State& state) {
    const residue::ReducedMap fbar(sample_map(), static_cast<zp::u64>(state.range(0)), false);
    for (auto _ : state) benchmark::DoNotOptimize(residue::functional_graph_omp(fbar));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void place_scan(benchmark::State& state, kernels::Mode mode) {
    kernels::set_mode(mode);
    const auto f = exactcore::parse_map("x^2+1");
    for (auto _ : state) {
        benchmark::DoNotOptimize(residue::find_periodic_places(f, exactcore::ProjPointQ(0), static_cast<zp::u64>(state.range(0))));
    }
    kernels::set_mode(kernels::Mode::OpenMP);
}

void BM_PlaceScanSerial(benchmark::State& state) { place_scan(state, kernels::Mode::Serial); }
void BM_PlaceScanOmp(benchmark::State& state) { place_scan(state, kernels::Mode::OpenMP); }

void witness(benchmark::State& state, kernels::Mode mode) {
    kernels::set_mode(mode);
    const auto f = exactcore::parse_map("x^2-2");
    for (auto _ : state) benchmark::DoNotOptimize(tower::witness_pipeline(f, exactcore::ProjPointQ(3), 1000, 2));
    kernels::set_mode(kernels::Mode::OpenMP);
}

void BM_WitnessSerial(benchmark::State& state) { witness(state, kernels::Mode::Serial); }
void BM_WitnessOmp(benchmark::State& state) { witness(state, kernels::Mode::OpenMP); }

}  // namespace

// Primes near 10^5 and 10^6.
BENCHMARK(BM_FunctionalGraphSerial)->Arg(100003)->Arg(1000003)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FunctionalGraphOmp)->Arg(100003)->Arg(1000003)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PlaceScanSerial)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PlaceScanOmp)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WitnessSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WitnessOmp)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
