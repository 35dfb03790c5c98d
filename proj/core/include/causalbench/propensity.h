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

// Propensity-score proxies: plain logistic regression fitted by IRLS and a
// just-identified covariate-balancing (CBPS-style) variant.
//
// Both fitters take only the design matrix and the treatment vector; outcome
// information cannot enter the proxy. An intercept column is always prepended,
// so `coef[0]` is the intercept and `coef[k + 1]` belongs to column k of X.

#ifndef CAUSALBENCH_PROPENSITY_H_
#define CAUSALBENCH_PROPENSITY_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace causalbench {

struct PropensityOptions {
  double tol = 1e-8;  // max |score-equation residual|
  int max_iter = 100;
  double clip_lo = 0.01;
  double clip_hi = 0.99;
  // CBPS only.
  int cbps_max_iter = 500;
  // Balance-loss tolerance per design column (intercept included).
  double cbps_tol_per_col = 1e-6;
};

struct PropensityFit {
  std::string method;  // "logistic" | "cbps"
  Eigen::VectorXd coef;
  Eigen::VectorXd linear_predictor;  // X~ . coef, unclipped
  Eigen::VectorXd scores;            // clipped sigmoid(linear_predictor)
  double clip_lo = 0.01;
  double clip_hi = 0.99;
  int n_clipped = 0;
  bool converged = false;
  int iterations = 0;
  bool ridge_jitter = false;
  // Final max |X~^T (t - mu)| for logistic, balance loss for CBPS.
  double final_residual = 0.0;
  // Log-likelihood after each accepted IRLS step (logistic) or balance loss
  // after each accepted descent step (CBPS).
  std::vector<double> trace;
};

struct BalanceDiagnostics {
  Eigen::VectorXd smd;
  double max_abs_smd = 0.0;
};

PropensityFit FitLogistic(const Eigen::MatrixXd& x, const Eigen::VectorXi& t,
                          const PropensityOptions& opts = {});

// Minimises || (1/n) sum_i [t_i/e_i - (1-t_i)/(1-e_i)] x~_i ||^2 starting from
// the logistic solution.
PropensityFit FitCbps(const Eigen::MatrixXd& x, const Eigen::VectorXi& t,
                      const PropensityOptions& opts = {});

// Balance loss at `coef` (unclipped scores). Exposed for oracle checks.
double CbpsBalanceLoss(const Eigen::MatrixXd& x, const Eigen::VectorXi& t,
                       const Eigen::VectorXd& coef);

// Rebuilds linear predictor and clipped scores for stored coefficients.
PropensityFit ScoresFromCoefficients(const Eigen::MatrixXd& x,
                                     const Eigen::VectorXd& coef,
                                     const PropensityOptions& opts = {});

double LogLikelihood(const Eigen::MatrixXd& x, const Eigen::VectorXi& t,
                     const Eigen::VectorXd& coef);

// Per-column weighted standardized mean difference between arms, divided by
// the pooled (unweighted) standard deviation sqrt((s_t^2 + s_c^2) / 2).
BalanceDiagnostics BalanceReport(const Eigen::MatrixXd& x,
                                 const Eigen::VectorXi& t,
                                 const Eigen::VectorXd& weights);

}  // namespace causalbench

#endif  // CAUSALBENCH_PROPENSITY_H_
