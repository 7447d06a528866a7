#include <benchmark/benchmark.h>

#include "blobcalc/blob_complex.hpp"
#include "blobcalc/hochschild.hpp"
#include "blobcalc/hocolim.hpp"

using namespace blobcalc;

namespace {

OneManifold circle(int n) { return {{{Component::Kind::Circle, n}}}; }

void BM_rank_hocolim_differential(benchmark::State& state) {
    CategoryPresentation c = builtin_presentation("matrix:2");
    HocolimComplex hc = hocolim_complex(circle(static_cast<int>(state.range(0))), c, 2);
    for (auto _ : state) benchmark::DoNotOptimize(rank(hc.complex.differential(2)));
}
BENCHMARK(BM_rank_hocolim_differential)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_build_blob_complex(benchmark::State& state) {
    CategoryPresentation c = builtin_presentation("matrix:2");
    OneManifold w = circle(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        BlobComplexResult r = build_blob_complex(w, c, 2);
        benchmark::DoNotOptimize(r.complex.dimension(2));
    }
}
BENCHMARK(BM_build_blob_complex)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_blob_homology(benchmark::State& state) {
    CategoryPresentation c = builtin_presentation("trunc-poly:2");
    OneManifold w = circle(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto h = build_blob_complex(w, c, 2).complex.homology_dimensions();
        benchmark::DoNotOptimize(h[1]);
    }
}
BENCHMARK(BM_blob_homology)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_bar_complex(benchmark::State& state) {
    CategoryPresentation c = builtin_presentation("matrix:2");
    for (auto _ : state) {
        auto h = hochschild_dims(c, static_cast<Index>(state.range(0)));
        benchmark::DoNotOptimize(h[0]);
    }
}
BENCHMARK(BM_bar_complex)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_ordinary_colimit(benchmark::State& state) {
    CategoryPresentation c = builtin_presentation("matrix:2");
    OneManifold w = circle(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        ColimitResult col = ordinary_colimit(w, c);
        benchmark::DoNotOptimize(col.dimension);
    }
}
BENCHMARK(BM_ordinary_colimit)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
