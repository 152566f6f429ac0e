#include <benchmark/benchmark.h>

#include "vlab/criteria.hpp"
#include "vlab/gallery.hpp"

using namespace vlab;

static void BM_CriterionM1(benchmark::State& state) {
  QuadConfig cfg;
  SupOptions opts;
  opts.jobs = static_cast<int>(state.range(0));
  const HoloFun g = gallery_symbol("exp_iz");
  for (auto _ : state) benchmark::DoNotOptimize(criterion_m1(g, SearchRegion{}, cfg, opts));
}
BENCHMARK(BM_CriterionM1)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_BlochSeminorm(benchmark::State& state) {
  QuadConfig cfg;
  const HoloFun g = gallery_symbol("cayley");
  for (auto _ : state) benchmark::DoNotOptimize(bloch_seminorm(g, SearchRegion{}, cfg));
}
BENCHMARK(BM_BlochSeminorm)->Unit(benchmark::kMillisecond);

static void BM_CompactnessProbe(benchmark::State& state) {
  QuadConfig cfg;
  const HoloFun g = gallery_symbol("exp_isqrtz");
  for (auto _ : state)
    benchmark::DoNotOptimize(compactness_probe(OperatorKind::JG, g, 0.0, 8, SearchRegion{}, cfg));
}
BENCHMARK(BM_CompactnessProbe)->Unit(benchmark::kMillisecond);
