#include <benchmark/benchmark.h>

#include <array>
#include <numbers>

#include <qdcnot/qdcnot.hpp>

namespace {

void BM_TruthTable(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qdcnot::truth_table());
}
BENCHMARK(BM_TruthTable);

void BM_Execute(benchmark::State& state) {
  const auto steps = qdcnot::cnot_sequence(state.range(0) == 0 ? qdcnot::RecombineMode::ideal
                                                              : qdcnot::RecombineMode::unitary);
  qdcnot::SpinVector input = qdcnot::SpinVector::Zero();
  input(2) = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(qdcnot::execute(steps, input));
}
BENCHMARK(BM_Execute)->Arg(0)->Arg(1);

void BM_BiasRatioSweep(benchmark::State& state) {
  const std::array<double, 5> ratios{10.0, 30.0, 100.0, 300.0, 1000.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(qdcnot::bias_ratio_sweep(ratios, qdcnot::kEntanglingArea));
}
BENCHMARK(BM_BiasRatioSweep);

// Cost scales with steps_per_segment x envelope segments.
void BM_SimulateLambda(benchmark::State& state) {
  const auto pulse = qdcnot::synthesize(qdcnot::Axis::X, std::numbers::pi, 1.0, 100.0, 0, 0.0,
                                        {qdcnot::EnvelopeShape::sine, 64});
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qdcnot::simulate_lambda(pulse, {}, steps));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SimulateLambda)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oN);

}  // namespace

BENCHMARK_MAIN();
