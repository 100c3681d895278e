// Copyright 2026 The quadmilp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>

#include "benchmark/benchmark.h"
#include "quadmilp/bnb.h"
#include "quadmilp/bounds.h"
#include "quadmilp/instances.h"
#include "quadmilp/lp.h"
#include "quadmilp/milp.h"
#include "quadmilp/pipeline.h"
#include "quadmilp/verify.h"

namespace quadmilp {
namespace {

void BM_StableQpSolve(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const Problem problem = *ToProblem(GenStableQp(k).spec);
  std::int64_t nodes = 0;
  for (auto _ : state) {
    auto result = SolveProblem(problem);
    nodes = result->report.nodes_explored;
    benchmark::DoNotOptimize(result);
  }
  state.counters["n"] = 3 * k + 2;
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_StableQpSolve)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_RandomSqpSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Problem problem = *ToProblem(GenRandomSqp(n, 0.5, 17));
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveProblem(problem));
  }
}
BENCHMARK(BM_RandomSqpSolve)->Arg(5)->Arg(10)->Arg(20)
    ->Unit(benchmark::kMillisecond);

void BM_RandomBoxQpSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Problem problem = *ToProblem(GenRandomBoxQp(n, 0.5, 17));
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveProblem(problem));
  }
}
BENCHMARK(BM_RandomBoxQpSolve)->Arg(4)->Arg(8)->Arg(12)
    ->Unit(benchmark::kMillisecond);

void BM_RootRelaxation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BuiltModel built =
      *BuildModel(*ToProblem(GenRandomBoxQp(n, 0.5, 23)));
  const LpProblem lp = ToLpRelaxation(built.model);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveLp(lp));
  }
  state.counters["rows"] = lp.num_rows();
  state.counters["cols"] = lp.num_cols();
}
BENCHMARK(BM_RootRelaxation)->Arg(10)->Arg(20)->Arg(40)
    ->Unit(benchmark::kMicrosecond);

void BM_PrimalBounds(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const QpInstance inst = ToProblem(GenRandomSqp(n, 0.5, 5))->form.instance;
  for (auto _ : state) {
    benchmark::DoNotOptimize(PrimalBounds(inst));
  }
}
BENCHMARK(BM_PrimalBounds)->Arg(10)->Arg(50)->Unit(benchmark::kMicrosecond);

void BM_OracleQp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const QpInstance inst = ToProblem(GenRandomSqp(n, 0.5, 9))->form.instance;
  for (auto _ : state) {
    benchmark::DoNotOptimize(OracleQp(inst));
  }
}
BENCHMARK(BM_OracleQp)->Arg(6)->Arg(10)->Arg(14)
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace quadmilp

BENCHMARK_MAIN();
