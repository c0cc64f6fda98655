#include <benchmark/benchmark.h>

#include "slipkit/limit_surface.hpp"

namespace {

void BM_NumericWrenchDisc(benchmark::State& state) {
  const auto dist = slipkit::PressureDistribution::uniform_disc(0.015);
  const slipkit::PlanarTwist twist{0.02, 0.0, 1.5};
  const int resolution = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        slipkit::limit_surface_numeric(dist, twist, 0.5, 2.0, resolution));
  }
}
BENCHMARK(BM_NumericWrenchDisc)->Arg(32)->Arg(64)->Arg(128)->Arg(256);

void BM_NumericWrenchRim(benchmark::State& state) {
  const auto dist = slipkit::PressureDistribution::rim(0.01);
  const slipkit::PlanarTwist twist{0.02, 0.0, 1.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(slipkit::limit_surface_numeric(dist, twist, 0.5, 2.0));
  }
}
BENCHMARK(BM_NumericWrenchRim);

void BM_EffectiveRadiusGrid(benchmark::State& state) {
  const auto dist = slipkit::PressureDistribution::uniform_disc(0.015);
  const int resolution = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto cells = slipkit::discretize(dist, resolution);
    benchmark::DoNotOptimize(
        slipkit::effective_radius(slipkit::PressureDistribution::grid(std::move(cells))));
  }
}
BENCHMARK(BM_EffectiveRadiusGrid)->Arg(64)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
