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

#include <cmath>

#include <gtest/gtest.h>

#include "causalbench/errors.h"
#include "causalbench/theory.h"

namespace causalbench {
namespace {

LinearSemSpec Instrument(std::int64_t n, int reps) {
  LinearSemSpec spec;
  spec.nc_kind = NcKind::kInstrument;
  spec.n = n;
  spec.replications = reps;
  spec.seed = 5;
  return spec;
}

TEST(TheoryTest, NoConfoundingMeansNoBias) {
  LinearSemSpec spec = Instrument(20000, 1);
  spec.beta = {0.0};
  const SemSample s = SimulateSem(spec, 0);
  EXPECT_EQ(DeltaD(s, spec.beta, spec.tau).closed_form, 0.0);
  EXPECT_EQ(DeltaFap(s, ProxyWithoutNc(spec, s, 0), 10, spec.beta, spec.tau).closed_form,
            0.0);
}

TEST(TheoryTest, HandConstructedImbalance) {
  SemSample s;
  s.c.resize(4, 1);
  s.c << 0.5, 0.3, 0.1, 0.1;
  s.nc = Eigen::VectorXd::Zero(4);
  s.t.resize(4);
  s.t << 1, 1, 0, 0;
  s.y = 2.0 * s.t.cast<double>() + s.c.col(0);
  const DeltaEstimate d = DeltaD(s, {1.0}, 2.0);
  EXPECT_NEAR(d.closed_form, 0.3, 1e-15);
  EXPECT_NEAR(d.empirical, 0.3, 1e-15);
}

TEST(TheoryTest, SingleStratumCollapsesExactly) {
  const LinearSemSpec spec = Instrument(20000, 1);
  const SemSample s = SimulateSem(spec, 0);
  const DeltaEstimate d = DeltaD(s, spec.beta, spec.tau);
  const DeltaEstimate f = DeltaFap(s, ProxyWithoutNc(spec, s, 0), 1, spec.beta, spec.tau);
  EXPECT_EQ(f.empirical, d.empirical);
  EXPECT_EQ(f.closed_form, d.closed_form);
}

TEST(TheoryTest, FineStrataRemoveMostBias) {
  LinearSemSpec spec = Instrument(100000, 1);
  spec.assign_nc = 0.0;
  spec.assign_c = {2.0};
  const SemSample s = SimulateSem(spec, 0);
  const DeltaEstimate d = DeltaD(s, spec.beta, spec.tau);
  const DeltaEstimate f = DeltaFap(s, ProxyWithoutNc(spec, s, 0), 50, spec.beta, spec.tau);
  EXPECT_LT(std::abs(f.closed_form), std::abs(d.closed_form) / 10.0);
}

TEST(TheoryTest, ZeroNcCoefficientReducesToFap) {
  LinearSemSpec spec = Instrument(20000, 1);
  spec.alpha2 = 0.0;
  const SemSample s = SimulateSem(spec, 0);
  const DeltaEstimate f =
      DeltaFap(s, ProxyWithoutNc(spec, s, 0), spec.strata, spec.beta, spec.tau);
  const DeltaNcEstimate nc = DeltaFapNc(s, ProxyWithNc(spec, s, 0), spec);
  EXPECT_EQ(nc.empirical, f.empirical);
  EXPECT_EQ(nc.closed_form_strata, f.closed_form);
}

TEST(TheoryTest, BalancedNcRecoversConfounder) {
  for (double p : {-1.5, 0.0, 0.7, 3.0}) {
    const double nc0 = BalancedNcValue(p, 2.0, 0.5, 1.5);
    EXPECT_NEAR(ConfounderGivenNc(p, nc0, 0.5, 1.5), p / 2.0, 1e-12);
  }
}

TEST(TheoryTest, StrataIdentityHoldsForStructuralProxy) {
  const ErrorReport rep = RunMonteCarlo(Instrument(20000, 5));
  EXPECT_TRUE(rep.j1_collapse_exact);
  EXPECT_LT(std::abs(rep.delta_d_gap.mean), 3 * rep.delta_d_gap.se + 1e-12);
  EXPECT_LT(std::abs(rep.delta_fap_gap.mean), 3 * rep.delta_fap_gap.se + 1e-12);
  EXPECT_LT(rep.max_conf_nc_error, 1e-9);
}

TEST(TheoryTest, InstrumentInflatesBias) {
  const ErrorReport rep = RunMonteCarlo(Instrument(100000, 3));
  EXPECT_GT(std::abs(rep.delta_fap_nc.mean), std::abs(rep.delta_fap.mean));
}

TEST(TheoryTest, ColliderWithoutOutcomePathHasNoExtraTerm) {
  LinearSemSpec spec = DefaultEquivalenceSpec(NcKind::kCollider);
  spec.collider_y = 0.0;
  spec.n = 20000;
  spec.replications = 8;
  const ErrorReport rep = RunMonteCarlo(spec);
  EXPECT_LT(std::abs(rep.collider_extra.mean), 3 * rep.collider_extra.se + 1e-3);
}

TEST(TheoryTest, ColliderIsWorseThanInstrument) {
  LinearSemSpec collider = DefaultEquivalenceSpec(NcKind::kCollider);
  collider.n = 50000;
  collider.replications = 4;
  LinearSemSpec inst = DefaultEquivalenceSpec(NcKind::kInstrument);
  inst.n = 50000;
  inst.replications = 4;
  EXPECT_GT(std::abs(RunMonteCarlo(collider).delta_fap_nc.mean),
            std::abs(RunMonteCarlo(inst).delta_fap_nc.mean));
}

TEST(TheoryTest, ConfounderOnlyStrataRecoverEffect) {
  LinearSemSpec spec = Instrument(50000, 5);
  spec.strata = 20;
  const ErrorReport rep = RunMonteCarlo(spec);
  EXPECT_LT(std::abs(rep.baseline_extra.mean), 3 * rep.baseline_extra.se + 1e-3);
}

TEST(EquivalenceTest, AdjustmentIsEquivalent) {
  EXPECT_TRUE(CheckEquivalence(DefaultEquivalenceSpec(NcKind::kAdjustment)).equivalent);
}

TEST(EquivalenceTest, InstrumentIsNotEquivalent) {
  EXPECT_FALSE(CheckEquivalence(DefaultEquivalenceSpec(NcKind::kInstrument)).equivalent);
}

TEST(EquivalenceTest, DegenerateInstrumentIsEquivalent) {
  LinearSemSpec spec = Instrument(20000, 4);
  spec.alpha2 = 0.0;
  EXPECT_TRUE(CheckEquivalence(spec).equivalent);
}

TEST(TheoryTest, SummarizeAndValidate) {
  const McStat m = Summarize({1.0, 2.0, 3.0, 4.0});
  EXPECT_EQ(m.mean, 2.5);
  EXPECT_NEAR(m.se, std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
  LinearSemSpec bad;
  bad.alpha1 = {1.0, 2.0};
  EXPECT_THROW(bad.Validate(), Error);
  bad = LinearSemSpec();
  bad.strata = 0;
  EXPECT_THROW(bad.Validate(), Error);
}

TEST(TheoryTest, SimulationIsSeeded) {
  const LinearSemSpec spec = Instrument(1000, 1);
  const SemSample a = SimulateSem(spec, 3);
  const SemSample b = SimulateSem(spec, 3);
  EXPECT_EQ(a.y, b.y);
  EXPECT_NE(a.y, SimulateSem(spec, 4).y);
}

}  // namespace
}  // namespace causalbench
