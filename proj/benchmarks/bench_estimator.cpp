#include <benchmark/benchmark.h>

#include "slipkit/estimator.hpp"
#include "slipkit/ingest.hpp"
#include "slipkit/simulator.hpp"

namespace {

void BM_EstimatorStep(benchmark::State& state) {
  slipkit::FrictionEstimator estimator;
  slipkit::Measurement m{0.0, -1.0, 0.0, 2.0, -0.008, 0.02, 0.0, 1.5};
  for (auto _ : state) {
    m.t += 1.0 / 120;
    benchmark::DoNotOptimize(estimator.step(m));
  }
}
BENCHMARK(BM_EstimatorStep);

void BM_PaperLikePipeline(benchmark::State& state) {
  const auto segments = slipkit::make_paper_like_scenario();
  slipkit::SimConfig config;
  for (auto _ : state) {
    const auto trace = slipkit::run_scenario(segments, config);
    const auto stream =
        slipkit::align(slipkit::RawStreams{trace.force, trace.velocity}, 1.0 / 120);
    slipkit::FrictionEstimator estimator;
    benchmark::DoNotOptimize(estimator.run(stream));
  }
}
BENCHMARK(BM_PaperLikePipeline)->Unit(benchmark::kMillisecond);

}  // namespace

