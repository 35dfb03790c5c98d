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
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "causalbench/balrep.h"
#include "causalbench/errors.h"
#include "causalbench/random.h"
#include "causalbench/synthgen.h"
#include "oracles.h"

namespace causalbench {
namespace {

struct Toy {
  Eigen::MatrixXd x;
  Eigen::VectorXi t;
  Eigen::VectorXd y;
};

// y = 1 + 2 x0 - x1 + t (0.5 + x0) + noise, t independent of x.
Toy LinearToy(int n, std::uint64_t seed) {
  Rng rng = Rng::ForStream(seed, "test/cfr-linear");
  Toy d{Eigen::MatrixXd(n, 2), Eigen::VectorXi(n), Eigen::VectorXd(n)};
  for (int i = 0; i < n; ++i) {
    d.x(i, 0) = rng.Normal(0.0, 1.0);
    d.x(i, 1) = rng.Normal(1.0, 2.0);
    d.t[i] = rng.Bernoulli(0.5) ? 1 : 0;
    d.y[i] = 1.0 + 2.0 * d.x(i, 0) - d.x(i, 1) + d.t[i] * (0.5 + d.x(i, 0)) +
             rng.Normal(0.0, 0.5);
  }
  return d;
}

// Least-squares fit of y on (1, x) within one arm.
Eigen::VectorXd ArmLeastSquares(const Toy& d, int arm) {
  std::vector<int> rows;
  for (int i = 0; i < d.t.size(); ++i) {
    if (d.t[i] == arm) rows.push_back(i);
  }
  Eigen::MatrixXd a(rows.size(), 3);
  a.col(0).setOnes();
  a.rightCols(2) = d.x(rows, Eigen::all);
  return a.colPivHouseholderQr().solve(d.y(rows));
}

Eigen::VectorXd LinearPredict(const Eigen::MatrixXd& x, const Eigen::VectorXd& b) {
  return (x * b.tail(2)).array() + b[0];
}

CfrOptions LinearOptions() {
  CfrOptions opts;
  opts.alpha = 0.0;
  opts.activation = Activation::kIdentity;
  opts.rep_layers = {4};
  opts.head_layers = {};
  opts.epochs = 300;
  opts.step_size = 0.02;
  opts.batch_size = 128;
  opts.seed = 3;
  return opts;
}

TEST(MmdTest, Definitions) {
  Eigen::MatrixXd a(2, 1), b(3, 1);
  a << 0.5, 1.5;
  b << 0.0, 1.0, 2.0;
  EXPECT_EQ(MmdLinear(a, b), 0.0);
  a << -1.0, 1.0;
  b << 1.0, 0.0, 2.0;
  EXPECT_EQ(MmdLinear(a, b), 1.0);
}

TEST(MmdTest, MatchesBruteForce) {
  Rng rng = Rng::ForStream(1, "test/mmd");
  Eigen::MatrixXd a(7, 3), b(5, 3);
  for (Eigen::Index k = 0; k < a.size(); ++k) a.data()[k] = rng.Normal(0.0, 1.0);
  for (Eigen::Index k = 0; k < b.size(); ++k) b.data()[k] = rng.Normal(0.5, 1.0);
  double expected = 0.0;
  for (int d = 0; d < 3; ++d) {
    double ma = 0.0, mb = 0.0;
    for (int i = 0; i < 7; ++i) ma += a(i, d) / 7.0;
    for (int i = 0; i < 5; ++i) mb += b(i, d) / 5.0;
    expected += (ma - mb) * (ma - mb);
  }
  EXPECT_NEAR(MmdLinear(a, b), expected, 1e-12);
}

TEST(MmdTest, EmptyGroup) {
  try {
    MmdLinear(Eigen::MatrixXd(0, 2), Eigen::MatrixXd::Ones(2, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyGroup);
  }
}

TEST(CfrTest, GradientMatchesFiniteDifferences) {
  const oracle::GradientCheck g = oracle::CfrGradientCheck(7, 20);
  EXPECT_EQ(g.coordinates, 20);
  EXPECT_LT(g.max_rel_error, 1e-4);
}

TEST(CfrTest, ParametersRoundTrip) {
  const Toy d = LinearToy(64, 1);
  RepNet net = InitRepNet(d.x, CfrOptions{});
  const Eigen::VectorXd theta = net.Parameters();
  EXPECT_EQ(theta.size(), net.ParameterCount());
  net.SetParameters(theta * 2.0);
  EXPECT_EQ(net.Parameters(), theta * 2.0);
  EXPECT_THROW(net.SetParameters(Eigen::VectorXd::Zero(3)), Error);
}

TEST(CfrTest, LinearNetworkMatchesLeastSquares) {
  const Toy d = LinearToy(1024, 2);
  const CfrFit fit = FitCfr(d.x, d.t, d.y, LinearOptions());
  const Eigen::VectorXd b0 = ArmLeastSquares(d, 0);
  const Eigen::VectorXd b1 = ArmLeastSquares(d, 1);
  double ls = 0.0;
  for (int i = 0; i < d.t.size(); ++i) {
    const Eigen::VectorXd& b = d.t[i] == 1 ? b1 : b0;
    const double r = d.y[i] - (b[0] + b.tail(2).dot(d.x.row(i)));
    ls += r * r / d.t.size();
  }
  const ObjectiveParts parts = CfrObjective(fit.net, d.x, d.t, d.y, 0.0);
  EXPECT_LE(parts.factual, 1.1 * ls);

  const PotentialOutcomes po = PredictPotentialOutcomes(fit.net, d.x);
  const Eigen::VectorXd ite_hat = po.y1 - po.y0;
  const Eigen::VectorXd ite_ls = LinearPredict(d.x, b1) - LinearPredict(d.x, b0);
  const double rmse = std::sqrt((ite_hat - ite_ls).squaredNorm() / ite_ls.size());
  const double scale = std::sqrt(ite_ls.squaredNorm() / ite_ls.size());
  EXPECT_LT(rmse, 0.1 * scale);
}

TEST(CfrTest, LargeAlphaShrinksImbalance) {
  Toy d = LinearToy(512, 3);
  for (int i = 0; i < d.t.size(); ++i) d.t[i] = d.x(i, 0) > 0.0 ? 1 : 0;
  CfrOptions opts;
  opts.alpha = 100.0;
  opts.epochs = 20;
  opts.step_size = 1e-3;
  opts.seed = 4;
  const CfrFit fit = FitCfr(d.x, d.t, d.y, opts);
  EXPECT_LT(fit.trace.imbalance.back(), fit.trace.imbalance.front());
}

TEST(CfrTest, TraceTotalsAddUp) {
  const Toy d = LinearToy(512, 4);
  CfrOptions opts;
  opts.alpha = 2.5;
  opts.epochs = 5;
  const CfrFit fit = FitCfr(d.x, d.t, d.y, opts);
  ASSERT_EQ(fit.trace.total.size(), 5u);
  for (std::size_t e = 0; e < 5; ++e) {
    EXPECT_NEAR(fit.trace.total[e],
                fit.trace.factual[e] + 2.5 * fit.trace.imbalance[e],
                1e-12 * std::abs(fit.trace.total[e]));
  }
}

TEST(CfrTest, ObjectiveDecreasesEarlyOnSyntheticData) {
  DgpConfig cfg;
  cfg.n = 4000;
  cfg.seed = 2;
  const LabeledDataset ds = GenerateDataset(cfg);
  const Eigen::MatrixXd x = Project(ds, CovariateCombination::Parse("C,A"));
  CfrOptions opts;
  opts.epochs = 5;
  opts.seed = 1;
  const CfrFit fit = FitCfr(x, ds.t(), ds.y_factual(), opts);
  EXPECT_LT(fit.trace.total.back(), fit.trace.total.front());
}

TEST(CfrTest, ZeroHeadsPredictZero) {
  const Toy d = LinearToy(64, 5);
  CfrOptions opts;
  opts.zero_init_heads = true;
  const RepNet net = InitRepNet(d.x, opts);
  const PotentialOutcomes po = PredictPotentialOutcomes(net, d.x);
  EXPECT_EQ(po.y0, Eigen::VectorXd::Zero(64));
  EXPECT_EQ(po.y1, Eigen::VectorXd::Zero(64));
}

TEST(CfrTest, DeterministicAndOrderFree) {
  const Toy d = LinearToy(600, 6);
  CfrOptions opts;
  opts.epochs = 3;
  opts.seed = 11;
  const CfrFit a = FitCfr(d.x, d.t, d.y, opts);
  const CfrFit b = FitCfr(d.x, d.t, d.y, opts);
  EXPECT_EQ(a.net.Parameters(), b.net.Parameters());

  std::vector<int> perm(600);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  const CfrFit c = FitCfr(d.x(perm, Eigen::all), d.t(perm), d.y(perm), opts);
  EXPECT_EQ(a.net.Parameters(), c.net.Parameters());
  EXPECT_EQ(PredictPotentialOutcomes(a.net, d.x).y1,
            PredictPotentialOutcomes(b.net, d.x).y1);
}

TEST(CfrTest, TrainingErrors) {
  const Toy d = LinearToy(100, 7);
  CfrOptions opts;
  opts.batch_size = 256;
  try {
    FitCfr(d.x, d.t, d.y, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
  opts.batch_size = 32;
  try {
    FitCfr(d.x, Eigen::VectorXi::Zero(100), d.y, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyGroup);
  }
}

}  // namespace
}  // namespace causalbench
