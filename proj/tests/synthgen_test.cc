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
#include "causalbench/metrics.h"
#include "causalbench/numeric.h"
#include "causalbench/synthgen.h"

namespace causalbench {
namespace {

using R = CovariateRole;

DgpConfig SmallConfig(std::int64_t n = 2000, std::uint64_t seed = 1) {
  DgpConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  return cfg;
}

TEST(CombinationTest, ParseAndLabel) {
  const CovariateCombination c = CovariateCombination::Parse("C, Z");
  ASSERT_EQ(c.roles().size(), 2u);
  EXPECT_EQ(c.roles()[0], R::kConfounder);
  EXPECT_EQ(c.roles()[1], R::kCollider);
  EXPECT_EQ(c.Label(), "{C,Z}");
  EXPECT_EQ(CovariateCombination::Parse(c.ToString()), c);
  EXPECT_TRUE(c.Contains(R::kCollider));
  EXPECT_FALSE(c.Contains(R::kAdjustment));
}

TEST(CombinationTest, RejectsUnknownAndDuplicateRoles) {
  try {
    CovariateCombination::Parse("C,Q");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownRole);
  }
  try {
    CovariateCombination::Parse("C,C");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
}

TEST(DgpConfigTest, ValidateRejectsBadValues) {
  DgpConfig cfg;
  cfg.mix = {0.5, 0.5, 0.5};
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = DgpConfig();
  cfg.dims[2] = 0;
  EXPECT_THROW(cfg.Validate(), Error);
  cfg = DgpConfig();
  cfg.weight_low = 6.0;
  EXPECT_THROW(cfg.Validate(), Error);
  EXPECT_NO_THROW(DgpConfig().Validate());
}

TEST(SynthgenTest, ZeroDispersionGivesZeroRoots) {
  DgpConfig cfg = SmallConfig(100);
  cfg.exo_variance = 0.0;
  const ExogenousBlocks b = SampleExogenous(cfg);
  EXPECT_EQ(b.instrument.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(b.confounder.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(b.adjustment.cwiseAbs().maxCoeff(), 0.0);
}

TEST(SynthgenTest, SameSeedSameDataset) {
  const LabeledDataset a = GenerateDataset(SmallConfig(500, 9));
  const LabeledDataset b = GenerateDataset(SmallConfig(500, 9));
  for (R role : kAllRoles) EXPECT_EQ(a.block(role), b.block(role));
  EXPECT_EQ(a.t(), b.t());
  EXPECT_EQ(a.y0(), b.y0());
  EXPECT_EQ(a.y1(), b.y1());
  const LabeledDataset c = GenerateDataset(SmallConfig(500, 10));
  EXPECT_NE(a.block(R::kConfounder), c.block(R::kConfounder));
}

TEST(SynthgenTest, RootMeanNearZero) {
  const DgpConfig cfg = SmallConfig(100000, 3);
  const ExogenousBlocks b = SampleExogenous(cfg);
  const double sd = std::sqrt(cfg.exo_variance);
  EXPECT_LT(std::abs(b.confounder.mean()), 4 * sd / std::sqrt(100000.0));
  EXPECT_NEAR(b.confounder.col(0).array().square().mean(), cfg.exo_variance,
              0.05 * cfg.exo_variance);
}

TEST(SynthgenTest, TreatmentProbabilityIsMixture) {
  DgpConfig cfg = SmallConfig(1000);
  cfg.exo_variance = 0.0;
  const LabeledDataset ds = GenerateDataset(cfg);
  const NoiseRecord& noise = *ds.noise();
  const Eigen::VectorXd& p = *ds.p_true();
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double expected = 0.4 * 0.5 + 0.5 * 0.5 + 0.1 * Sigmoid(noise.eps_t[i]);
    ASSERT_NEAR(p[i], expected, 1e-15);
  }
}

TEST(SynthgenTest, TreatmentProbabilityBoundsAndRate) {
  const LabeledDataset ds = GenerateDataset(SmallConfig(20000, 5));
  const Eigen::VectorXd& p = *ds.p_true();
  const NoiseRecord& noise = *ds.noise();
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double s = Sigmoid(noise.eps_t[i]);
    ASSERT_GE(p[i], 0.1 * s);
    ASSERT_LE(p[i], 0.9 + 0.1 * s);
  }
  EXPECT_NEAR(ds.t().cast<double>().mean(), p.mean(), 0.02);
}

TEST(SynthgenTest, NoiselessControlMediatorIsHalf) {
  const DgpConfig cfg = SmallConfig(50);
  const StructuralWeights w = DrawWeights(cfg);
  const ExogenousBlocks b = SampleExogenous(cfg);
  const NoiseRecord noise = DrawNoise(cfg);
  const NonRootValues v = GenerateNonRoot(Eigen::VectorXd::Zero(cfg.n),
                                          b.confounder, b.adjustment, w, noise,
                                          0.0);
  EXPECT_TRUE((v.mediator.array() == 0.5).all());
}

TEST(SynthgenTest, CounterfactualArmsShareExogenousPaths) {
  const DgpConfig cfg = SmallConfig(200);
  const StructuralWeights w = DrawWeights(cfg);
  const ExogenousBlocks b = SampleExogenous(cfg);
  const NoiseRecord noise = DrawNoise(cfg);
  const Eigen::VectorXd zeros = Eigen::VectorXd::Zero(cfg.n);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(cfg.n);
  const NonRootValues v0 =
      GenerateNonRoot(zeros, b.confounder, b.adjustment, w, noise, cfg.noise_scale);
  const NonRootValues v1 =
      GenerateNonRoot(ones, b.confounder, b.adjustment, w, noise, cfg.noise_scale);
  EXPECT_NE(v0.collider, v1.collider);
  EXPECT_NE(v0.treatment_influenced, v1.treatment_influenced);
  EXPECT_NE(v0.outcome_influenced, v1.outcome_influenced);

  // The effect does not depend on A: swap in another A block.
  const Eigen::MatrixXd other_a = -2.0 * b.adjustment;
  const NonRootValues u0 =
      GenerateNonRoot(zeros, b.confounder, other_a, w, noise, cfg.noise_scale);
  const NonRootValues u1 =
      GenerateNonRoot(ones, b.confounder, other_a, w, noise, cfg.noise_scale);
  EXPECT_LT(((v1.y - v0.y) - (u1.y - u0.y)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SynthgenTest, OutcomeRangeFollowsSigmoidBounds) {
  const LabeledDataset ds = GenerateDataset(SmallConfig(5000, 2));
  const Eigen::VectorXd core =
      ds.y0() - ds.config().noise_scale * ds.noise()->eps_y;
  EXPECT_GT(core.minCoeff(), 0.0);
  EXPECT_LT(core.maxCoeff(), 3.0);
}

TEST(SynthgenTest, FactualConsistencyAndTruth) {
  const LabeledDataset ds = GenerateDataset(SmallConfig(3000, 4));
  for (Eigen::Index i = 0; i < ds.size(); ++i) {
    ASSERT_EQ(ds.y_factual()[i], ds.t()[i] == 1 ? ds.y1()[i] : ds.y0()[i]);
  }
  const TrueEffects truth = ComputeTrueEffects(ds);
  EXPECT_NEAR(truth.ate, (ds.y1() - ds.y0()).mean(), 1e-12);
  // Every ITE runs through the mediator, so it is positive.
  EXPECT_GT(truth.ite.minCoeff(), 0.0);
}

TEST(SynthgenTest, TreatmentCorrelatesWithMediator) {
  const LabeledDataset ds = GenerateDataset(SmallConfig(5000, 6));
  const Eigen::VectorXd t = ds.t().cast<double>();
  const Eigen::VectorXd m = ds.block(R::kMediator).col(0);
  const double cov = ((t.array() - t.mean()) * (m.array() - m.mean())).mean();
  EXPECT_GT(cov, 0.0);
}

TEST(SynthgenTest, ProjectSelectsBlocks) {
  const LabeledDataset ds = GenerateDataset(SmallConfig(100));
  const Eigen::MatrixXd c = Project(ds, CovariateCombination::Parse("C"));
  EXPECT_EQ(c, ds.block(R::kConfounder));
  const Eigen::MatrixXd cz = Project(ds, CovariateCombination::Parse("C,Z"));
  ASSERT_EQ(cz.cols(), 2);
  EXPECT_EQ(cz.col(1), ds.block(R::kCollider).col(0));
  DgpConfig wide = SmallConfig(100);
  wide.dims = {2, 1, 3, 1, 2, 1, 1};
  const LabeledDataset ws = GenerateDataset(wide);
  const Eigen::MatrixXd all =
      Project(ws, CovariateCombination::Parse("I,C,A,M,Z,TI,YI"));
  EXPECT_EQ(all.cols(), 11);
}

TEST(SynthgenTest, PositivityDiagnosticReportsRange) {
  const LabeledDataset ds = GenerateDataset(SmallConfig(20000, 1));
  const PositivityDiagnostic pos = CheckPositivity(ds);
  EXPECT_EQ(pos.min_p, ds.p_true()->minCoeff());
  EXPECT_EQ(pos.max_p, ds.p_true()->maxCoeff());
  EXPECT_EQ(pos.ok, pos.min_p > 0.02 && pos.max_p < 0.98);
}

}  // namespace
}  // namespace causalbench
