// Copyright 2026 The causal-bench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cstdint>

#include <benchmark/benchmark.h>

#include "causalbench/adjust.h"
#include "causalbench/balrep.h"
#include "causalbench/boost.h"
#include "causalbench/harness.h"
#include "causalbench/propensity.h"
#include "causalbench/synthgen.h"

namespace causalbench {
namespace {

struct Fixture {
  LabeledDataset ds;
  Eigen::MatrixXd x;
  Eigen::VectorXd scores;
};

Fixture MakeFixture(std::int64_t n) {
  DgpConfig cfg;
  cfg.n = n;
  cfg.seed = 3;
  Fixture f{GenerateDataset(cfg), {}, {}};
  f.x = Project(f.ds, CovariateCombination::Parse("C,A"));
  f.scores = FitLogistic(f.x, f.ds.t()).scores;
  return f;
}

void BM_FitLogistic(benchmark::State& state) {
  const Fixture f = MakeFixture(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(FitLogistic(f.x, f.ds.t()));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FitLogistic)->Arg(2000)->Arg(20000);

void BM_FitCbps(benchmark::State& state) {
  const Fixture f = MakeFixture(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(FitCbps(f.x, f.ds.t()));
  }
}
BENCHMARK(BM_FitCbps)->Arg(20000);

void BM_Stratify(benchmark::State& state) {
  const Fixture f = MakeFixture(state.range(0));
  for (auto _ : state) {
    const Stratification s = Stratify(f.scores, f.ds.t(), 5);
    benchmark::DoNotOptimize(AteStratified(f.ds.y_factual(), f.ds.t(), s));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Stratify)->Arg(20000);

void BM_Match1Nn(benchmark::State& state) {
  const Fixture f = MakeFixture(state.range(0));
  for (auto _ : state) {
    const MatchSet ms = Match1Nn(f.scores, f.ds.t());
    benchmark::DoNotOptimize(AteMatched(f.ds.y_factual(), f.ds.t(), ms));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Match1Nn)->Arg(2000)->Arg(20000);

void BM_FitGbm(benchmark::State& state) {
  const Fixture f = MakeFixture(state.range(0));
  const Eigen::MatrixXd xt = AppendTreatment(f.x, f.ds.t());
  const Eigen::VectorXd w = Eigen::VectorXd::Ones(xt.rows());
  for (auto _ : state) {
    benchmark::DoNotOptimize(FitGbm(xt, f.ds.y_factual(), w));
  }
}
BENCHMARK(BM_FitGbm)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_CfrEpoch(benchmark::State& state) {
  const Fixture f = MakeFixture(state.range(0));
  CfrOptions opts;
  opts.epochs = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(FitCfr(f.x, f.ds.t(), f.ds.y_factual(), opts));
  }
}
BENCHMARK(BM_CfrEpoch)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_RunCell(benchmark::State& state) {
  const Fixture f = MakeFixture(20000);
  const auto kind = static_cast<EstimatorKind>(state.range(0));
  const CovariateCombination combo = CovariateCombination::Parse("C,A");
  EstimatorOptions opts;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunCell(f.ds, combo, kind, opts));
  }
  state.SetLabel(EstimatorName(kind));
}
BENCHMARK(BM_RunCell)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace causalbench

BENCHMARK_MAIN();
