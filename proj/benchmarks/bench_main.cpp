#include <benchmark/benchmark.h>

#include "logicmine/ca.hpp"
#include "logicmine/complexity.hpp"
#include "logicmine/sop.hpp"

namespace {

using namespace logicmine;

constexpr std::uint16_t kComplexRule = 32746;

ca::SpaceTime sample_run(std::uint16_t id = kComplexRule) {
  return ca::evolve(ca::random_config(500, 0.5, 7), ca::rule_from_function(TruthTable::from_id(id)),
                    500);
}

void BM_Step(benchmark::State& state) {
  const auto rule = ca::rule_from_function(TruthTable::from_id(kComplexRule));
  auto cfg = ca::random_config(static_cast<std::size_t>(state.range(0)), 0.5, 1);
  for (auto _ : state) {
    cfg = ca::step(cfg, rule);
    benchmark::DoNotOptimize(cfg);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Step)->Arg(500)->Arg(4096);

void BM_StepReference(benchmark::State& state) {
  const auto rule = ca::rule_from_function(TruthTable::from_id(kComplexRule));
  auto cfg = ca::random_config(500, 0.5, 1);
  for (auto _ : state) {
    cfg = ca::step_reference(cfg, rule);
    benchmark::DoNotOptimize(cfg);
  }
}
BENCHMARK(BM_StepReference);

void BM_Evolve500(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sample_run());
}
BENCHMARK(BM_Evolve500)->Unit(benchmark::kMillisecond);

void BM_Attractor(benchmark::State& state) {
  const auto st = sample_run();
  for (auto _ : state) benchmark::DoNotOptimize(ca::detect_attractor(st));
}
BENCHMARK(BM_Attractor)->Unit(benchmark::kMillisecond);

void BM_Lz76(benchmark::State& state) {
  const auto bits = complexity::space_time_bits(sample_run());
  for (auto _ : state) benchmark::DoNotOptimize(complexity::lz76(bits));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(bits.size()));
}
BENCHMARK(BM_Lz76)->Unit(benchmark::kMillisecond);

void BM_Png(benchmark::State& state) {
  const auto st = sample_run();
  for (auto _ : state) benchmark::DoNotOptimize(complexity::render_png(st));
}
BENCHMARK(BM_Png)->Unit(benchmark::kMillisecond);

void BM_Analyze(benchmark::State& state) {
  const auto st = sample_run();
  for (auto _ : state) benchmark::DoNotOptimize(complexity::analyze(kComplexRule, 7, st));
}
BENCHMARK(BM_Analyze)->Unit(benchmark::kMillisecond);

void BM_Minimize(benchmark::State& state) {
  std::uint32_t id = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sop::minimize(TruthTable::from_id(static_cast<std::uint16_t>(id))));
    id = (id * 2654435761u + 12345u) & 0xFFFF;
  }
}
BENCHMARK(BM_Minimize)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
