#include <benchmark/benchmark.h>

#include <cmath>

#include "waveobs/domain.hpp"
#include "waveobs/kernels.hpp"
#include "waveobs/space_time.hpp"

using namespace waveobs;

namespace {

const ObservationDomain& tube() {
    static const ObservationDomain d = [] {
        std::vector<double> v(129);
        for (std::size_t k = 0; k < v.size(); ++k) {
            v[k] = 0.5 + 0.2 * std::sin(3.0 * static_cast<double>(k) / 64.0);
        }
        return ObservationDomain::tube(Curve(2.0, v), 0.15);
    }();
    return d;
}

void BM_GramSerial(benchmark::State& state) {
    const SpaceTimeWeight w(tube(), WeightProfile(0.15, 0.15 / 4.0));
    const int level = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_gram_serial(w, level, 5));
    }
}

void BM_GramOmp(benchmark::State& state) {
    const SpaceTimeWeight w(tube(), WeightProfile(0.15, 0.15 / 4.0));
    const int level = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_gram_omp(w, level, 5));
    }
}

}  // namespace

BENCHMARK(BM_GramSerial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramOmp)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
