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

#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "causalbench/adjust.h"
#include "causalbench/errors.h"
#include "causalbench/harness.h"
#include "causalbench/report.h"
#include "causalbench/synthgen.h"

namespace causalbench {
namespace {

SweepConfig SmallSweep() {
  SweepConfig cfg;
  cfg.dgp.n = 2000;
  cfg.seeds = {1, 2};
  cfg.combos = {CovariateCombination::Parse("C"), CovariateCombination::Parse("C,A"),
                CovariateCombination::Parse("C,Z")};
  cfg.estimators = {EstimatorKind::kPss, EstimatorKind::kIpw, EstimatorKind::kCfr};
  cfg.options.cfr.epochs = 2;
  return cfg;
}

const CellResult* FindCell(const SweepReport& r, EstimatorKind e,
                           const CovariateCombination& c, std::uint64_t seed) {
  for (const CellResult& cell : r.cells) {
    if (cell.estimator == e && cell.combo == c && cell.seed == seed) return &cell;
  }
  return nullptr;
}

TEST(EstimatorNameTest, RoundTrip) {
  for (EstimatorKind e : kAllEstimators) {
    EXPECT_EQ(ParseEstimator(EstimatorName(e)), e);
  }
  EXPECT_EQ(ParseEstimator("cbps"), EstimatorKind::kCbps);
  EXPECT_THROW(ParseEstimator("bart"), Error);
  EXPECT_EQ(DefaultCombos().size(), 7u);
}

TEST(CellSeedTest, DistinctPerCell) {
  const auto c = CovariateCombination::Parse("C");
  const auto ca = CovariateCombination::Parse("C,A");
  std::set<std::uint64_t> seeds;
  for (EstimatorKind e : kAllEstimators) {
    seeds.insert(CellSeed(1, c, e));
    seeds.insert(CellSeed(1, ca, e));
    seeds.insert(CellSeed(2, c, e));
  }
  EXPECT_EQ(seeds.size(), 15u);
  EXPECT_EQ(CellSeed(4, c, EstimatorKind::kPsm), CellSeed(4, c, EstimatorKind::kPsm));
}

TEST(RunCellTest, SingleStratumIsDifferenceOfMeans) {
  DgpConfig dgp;
  dgp.n = 3000;
  dgp.seed = 3;
  const LabeledDataset ds = GenerateDataset(dgp);
  EstimatorOptions opts;
  opts.strata = 1;
  const CellResult cell =
      RunCell(ds, CovariateCombination::Parse("C"), EstimatorKind::kPss, opts);
  ASSERT_TRUE(cell.ok) << cell.error_message;
  EXPECT_EQ(cell.ate_hat, AteDifferenceOfMeans(ds.y_factual(), ds.t()));
  EXPECT_EQ(cell.strata_used, 1);
}

TEST(RunCellTest, ExcludedAdjustmentGivesIdenticalAte) {
  DgpConfig dgp;
  dgp.n = 3000;
  dgp.seed = 4;
  const LabeledDataset ds = GenerateDataset(dgp);
  EstimatorOptions opts;
  opts.propensity_exclude = {CovariateRole::kAdjustment};
  for (EstimatorKind e : {EstimatorKind::kPss, EstimatorKind::kPsm,
                          EstimatorKind::kIpw, EstimatorKind::kCbps}) {
    const CellResult c = RunCell(ds, CovariateCombination::Parse("C"), e, opts);
    const CellResult ca = RunCell(ds, CovariateCombination::Parse("C,A"), e, opts);
    ASSERT_TRUE(c.ok && ca.ok);
    EXPECT_EQ(c.eps_ate, ca.eps_ate) << EstimatorName(e);
  }
}

TEST(RunCellTest, ErrorsAreRecordedNotThrown) {
  DgpConfig dgp;
  dgp.n = 100;
  const LabeledDataset ds = GenerateDataset(dgp);
  EstimatorOptions opts;
  opts.cfr.batch_size = 512;
  const CellResult cell =
      RunCell(ds, CovariateCombination::Parse("C"), EstimatorKind::kCfr, opts);
  EXPECT_FALSE(cell.ok);
  EXPECT_EQ(cell.error_code, "ConfigError");
}

TEST(SweepTest, OneCell) {
  SweepConfig cfg;
  cfg.dgp.n = 1000;
  cfg.seeds = {1};
  cfg.combos = {CovariateCombination::Parse("C")};
  cfg.estimators = {EstimatorKind::kIpw};
  const SweepReport r = RunSweep(cfg);
  EXPECT_EQ(r.cells.size(), 1u);
  EXPECT_EQ(r.summaries.size(), 1u);
  EXPECT_TRUE(r.cells[0].ok);
}

TEST(SweepTest, CellsAreIndependent) {
  const SweepConfig cfg = SmallSweep();
  const SweepReport r = RunSweep(cfg);
  ASSERT_EQ(r.cells.size(), 2u * 3u * 3u);
  DgpConfig dgp = cfg.dgp;
  dgp.seed = 2;
  const LabeledDataset ds = GenerateDataset(dgp);
  const auto combo = CovariateCombination::Parse("C,Z");
  const CellResult alone = RunCell(ds, combo, EstimatorKind::kCfr, cfg.options);
  const CellResult* in_sweep = FindCell(r, EstimatorKind::kCfr, combo, 2);
  ASSERT_NE(in_sweep, nullptr);
  EXPECT_EQ(alone.pehe, in_sweep->pehe);
  EXPECT_EQ(alone.ate_hat, in_sweep->ate_hat);
}

TEST(SweepTest, ComboOrderDoesNotChangeValues) {
  SweepConfig cfg = SmallSweep();
  const SweepReport a = RunSweep(cfg);
  std::reverse(cfg.combos.begin(), cfg.combos.end());
  const SweepReport b = RunSweep(cfg);
  for (const CellResult& cell : a.cells) {
    const CellResult* other = FindCell(b, cell.estimator, cell.combo, cell.seed);
    ASSERT_NE(other, nullptr);
    EXPECT_EQ(cell.pehe, other->pehe);
    EXPECT_EQ(cell.eps_ate, other->eps_ate);
  }
}

TEST(SweepTest, ThreadCountDoesNotChangeReport) {
  SweepConfig cfg = SmallSweep();
  const SweepReport a = RunSweep(cfg);
  cfg.threads = 3;
  SweepReport b = RunSweep(cfg);
  EXPECT_EQ(a.config_hash, b.config_hash);
  b.config.threads = a.config.threads;  // echoed in the report, nothing else
  EXPECT_EQ(RenderJsonWithoutTimestamp(a), RenderJsonWithoutTimestamp(b));
}

TEST(SweepTest, FailedCellsDoNotAbort) {
  SweepConfig cfg = SmallSweep();
  cfg.options.cfr.batch_size = 5000;
  const SweepReport r = RunSweep(cfg);
  for (const CellResult& cell : r.cells) {
    EXPECT_EQ(cell.ok, cell.estimator != EstimatorKind::kCfr);
  }
  const CellSummary* s = r.Find(EstimatorKind::kCfr, CovariateCombination::Parse("C"));
  ASSERT_NE(s, nullptr);
  EXPECT_EQ(s->n_ok, 0);
  EXPECT_EQ(s->n_failed, 2);
}

TEST(SweepTest, DefaultGridSmokeRun) {
  SweepConfig cfg;
  cfg.seeds = {7};
  cfg.options.cfr.epochs = 3;
  const SweepReport r = RunSweep(cfg);
  EXPECT_EQ(r.cells.size(), 35u);
  EXPECT_EQ(r.summaries.size(), 35u);
  for (const CellResult& cell : r.cells) {
    EXPECT_TRUE(cell.ok) << EstimatorName(cell.estimator) << " " << cell.combo.Label()
                         << ": " << cell.error_message;
  }
}

TEST(SweepConfigTest, Validation) {
  SweepConfig cfg;
  cfg.seeds.clear();
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = SweepConfig();
  cfg.combos.push_back(cfg.combos.front());
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = SweepConfig();
  cfg.threads = 0;
  EXPECT_THROW(cfg.Validate(), Error);
}

}  // namespace
}  // namespace causalbench
