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

#include <gtest/gtest.h>

#include "causalbench/errors.h"
#include "causalbench/metrics.h"
#include "oracles.h"

namespace causalbench {
namespace {

TEST(MetricsTest, HandArithmetic) {
  const oracle::SuiteResult r = oracle::RunMetricArithmeticSuite();
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(MetricsTest, IdenticalOutcomesHaveNoEffect) {
  Eigen::VectorXd y(3);
  y << 0.3, -1.0, 2.0;
  const TrueEffects te = ComputeTrueEffects(y, y);
  EXPECT_EQ(te.ate, 0.0);
  EXPECT_EQ(te.ite, Eigen::VectorXd::Zero(3));
}

TEST(MetricsTest, LengthMismatch) {
  try {
    Pehe(Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
  EXPECT_THROW(ComputeTrueEffects(Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(4)),
               Error);
}

}  // namespace
}  // namespace causalbench
