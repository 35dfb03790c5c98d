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

// Independent reference implementations used by the unit tests and the
// acceptance binary. They favour plain loops over speed and share no code
// with the library beyond its public types.

#ifndef CAUSALBENCH_TESTS_ORACLES_H_
#define CAUSALBENCH_TESTS_ORACLES_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "causalbench/adjust.h"
#include "causalbench/balrep.h"

namespace causalbench::oracle {

struct Toy {
  Eigen::VectorXd scores;
  Eigen::VectorXi t;
  Eigen::VectorXd y;
};

// n in [2, max_n], both arms present, scores on a coarse grid so that ties
// are common.
Toy RandomToy(std::uint64_t seed, int max_n);

// Stratum index per sample after quantile cuts and arm-completing merges.
std::vector<int> StratumLabels(const Eigen::VectorXd& scores,
                               const Eigen::VectorXi& t, int num_strata);
double StratifiedAte(const Eigen::VectorXd& scores, const Eigen::VectorXi& t,
                     const Eigen::VectorXd& y, int num_strata);

// All opposite-arm samples at minimal score distance, ordered by
// (score, index). Empty when outside the caliper.
std::vector<std::vector<int>> NearestNeighbours(const Eigen::VectorXd& scores,
                                                const Eigen::VectorXi& t,
                                                double caliper);
// Greedy one-to-one pairing; partner[i] = -1 when unmatched.
std::vector<int> GreedyPairs(const Eigen::VectorXd& scores,
                             const Eigen::VectorXi& t, double caliper);
double MatchedAte(const Eigen::VectorXd& scores, const Eigen::VectorXi& t,
                  const Eigen::VectorXd& y,
                  const std::vector<std::vector<int>>& matches);

double IpwAte(const Eigen::VectorXd& scores, const Eigen::VectorXi& t,
              const Eigen::VectorXd& y, bool hajek);

// Plain Newton-Raphson on the logistic score equations with Gaussian
// elimination. Intercept first.
Eigen::VectorXd NewtonLogistic(const Eigen::MatrixXd& x,
                               const Eigen::VectorXi& t, int iterations = 50);

// Squared norm of the mean CBPS moment vector at beta (intercept first).
double CbpsLoss(const Eigen::MatrixXd& x, const Eigen::VectorXi& t,
                const Eigen::VectorXd& beta);

struct SuiteResult {
  int cases = 0;
  int failures = 0;
  std::string first_failure;
  bool ok() const { return cases > 0 && failures == 0; }
};

// Stratified, matched (both modes) and IPW ATE against the oracles above on
// `cases` random toys with n <= max_n. Equality is exact.
SuiteResult RunAdjustmentOracleSuite(int cases, std::uint64_t seed,
                                     int max_n = 12);

// Maximum absolute coefficient difference between FitLogistic and
// NewtonLogistic on a seeded 200-sample dataset.
double LogisticOracleGap(std::uint64_t seed);

// Hand-computed PEHE and eps_ATE toys.
SuiteResult RunMetricArithmeticSuite();

struct GradientCheck {
  double max_rel_error = 0.0;
  int coordinates = 0;
};

// Central differences of CfrObjective at `coordinates` random parameters of a
// seeded toy network.
GradientCheck CfrGradientCheck(std::uint64_t seed, int coordinates);

}  // namespace causalbench::oracle

#endif  // CAUSALBENCH_TESTS_ORACLES_H_
