#include <benchmark/benchmark.h>

#include "gsg/gsg.hpp"

using namespace gsg;

namespace {

GameInstance Instance(int attackers, bool strong) {
  GenerationParams p;
  p.num_informants = 6;
  p.num_attackers = attackers;
  p.num_targets = 8;
  p.resources = 3;
  p.max_intensity = 0.6;
  p.full_graph = true;
  auto inst = GenerateInstance(17, p);
  if (strong) {
    for (auto& e : inst.graph.edges) e.intensity = 1.0;
  }
  return inst;
}

InformantSet Everyone(const GameInstance& inst) {
  std::vector<int> m(inst.graph.NumInformants());
  for (int i = 0; i < static_cast<int>(m.size()); ++i) m[i] = i;
  return InformantSet(m);
}

void BM_EvalExact(benchmark::State& state) {
  const auto inst = Instance(static_cast<int>(state.range(0)), false);
  const auto ctx = MakeLevelZeroContext(inst);
  const auto u = Everyone(inst);
  for (auto _ : state) benchmark::DoNotOptimize(EvalExact(ctx, u).value);
}
BENCHMARK(BM_EvalExact)->DenseRange(4, 16, 4)->Unit(benchmark::kMillisecond);

void BM_EvalTruncated(benchmark::State& state) {
  const auto inst = Instance(static_cast<int>(state.range(0)), false);
  const auto ctx = MakeLevelZeroContext(inst);
  const auto u = Everyone(inst);
  for (auto _ : state) benchmark::DoNotOptimize(EvalTruncated(ctx, u, 6).value);
}
BENCHMARK(BM_EvalTruncated)->DenseRange(4, 16, 4)->Unit(benchmark::kMillisecond);

void BM_EvalSisi(benchmark::State& state) {
  const auto inst = Instance(static_cast<int>(state.range(0)), true);
  const auto ctx = MakeLevelZeroContext(inst);
  const auto u = Everyone(inst);
  for (auto _ : state) benchmark::DoNotOptimize(EvalSisi(ctx, u).value);
}
BENCHMARK(BM_EvalSisi)->RangeMultiplier(2)->Range(4, 64)->Unit(benchmark::kMicrosecond);

void BM_SolveQri(benchmark::State& state) {
  GenerationParams p;
  p.num_attackers = 1;
  p.num_targets = static_cast<int>(state.range(0));
  p.resources = 2;
  const auto inst = GenerateInstance(3, p);
  for (auto _ : state) benchmark::DoNotOptimize(SolveQri(inst, 0.5).objective);
}
BENCHMARK(BM_SolveQri)->DenseRange(2, 10, 4)->Unit(benchmark::kMillisecond);

void BM_SolveLp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  LinearProgram lp;
  for (int j = 0; j < n; ++j) lp.AddVariable(0.0, 1.0, 1.0 + (j * 7 % 5));
  for (int r = 0; r < n / 2; ++r) {
    std::vector<double> row(n);
    for (int j = 0; j < n; ++j) row[j] = 1.0 + ((r + j) % 3);
    lp.AddLessEqual(row, n / 3.0);
  }
  for (auto _ : state) benchmark::DoNotOptimize(SolveLp(lp).value);
}
BENCHMARK(BM_SolveLp)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
