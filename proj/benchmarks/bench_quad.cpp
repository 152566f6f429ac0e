#include <benchmark/benchmark.h>

#include "vlab/gallery.hpp"
#include "vlab/ops.hpp"
#include "vlab/quad.hpp"

using namespace vlab;

static void BM_AdaptiveKink(benchmark::State& state) {
  QuadConfig cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(adaptive_integral([](double x) { return cplx(std::abs(x - 0.3)); }, 0, 1, cfg));
}
BENCHMARK(BM_AdaptiveKink);

static void BM_CauchyDerivative(benchmark::State& state) {
  QuadConfig cfg;
  const HoloFun f = gallery_symbol("exp_isqrtz").without_derivative();
  const auto order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cauchy_derivative(f, Point(0.3, 0.7), order, cfg));
}
BENCHMARK(BM_CauchyDerivative)->Arg(0)->Arg(1)->Arg(2);

static void BM_HardyNormExtremal(benchmark::State& state) {
  QuadConfig cfg;
  const HoloFun f = extremal_fw(Point(0.5, 1.5));
  for (auto _ : state) benchmark::DoNotOptimize(hardy_norm(f, default_hardy_heights(), cfg));
}
BENCHMARK(BM_HardyNormExtremal)->Unit(benchmark::kMillisecond);

static void BM_ApplyJG(benchmark::State& state) {
  QuadConfig cfg;
  const HoloFun g = gallery_symbol("cayley");
  const HoloFun f = extremal_fw(kImagUnit);
  for (auto _ : state) benchmark::DoNotOptimize(apply(OperatorKind::JG, g, f, kImagUnit, Point(2, 0.25), cfg));
}
BENCHMARK(BM_ApplyJG);
