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


#ifndef CAUSALBENCH_BOOST_H_
#define CAUSALBENCH_BOOST_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace causalbench {

struct GbmOptions {
  int max_depth = 3;
  double learning_rate = 0.1;
  int max_trees = 500;
  double val_frac = 0.2;
  int patience = 20;
  // Minimum child weight as a fraction of the total training weight.
  double min_leaf_weight_fraction = 0.002;
  // Exact midpoint thresholds up to this many training rows, quantile
  // candidates above it.
  std::int64_t exact_threshold_rows = 10000;
  int max_candidates = 64;
  // Column used to stratify the validation split; -1 means the last column.
  int stratify_column = -1;
  std::uint64_t seed = 0;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
};

// Rows with x[feature] <= threshold go left.
struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double Predict(const double* row, Eigen::Index stride) const;
  int Depth() const;
};

struct BoostedModel {
  std::vector<Tree> trees;
  double learning_rate = 0.1;
  double init = 0.0;
  int best_iter = 0;
  int num_features = 0;
  int treatment_column = -1;  // always the last column
  bool degenerate_target = false;
  std::vector<double> train_loss;       // weighted train MSE after each tree
  std::vector<double> validation_loss;  // weighted validation MSE, if any
};

// Least-squares boosting with weighted residual fits and early stopping on a
// seeded holdout that is stratified by the stratify column. A constant target
// yields an init-only model flagged degenerate_target.
BoostedModel FitGbm(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                    const Eigen::VectorXd& weights, const GbmOptions& opts = {});

// Uses the first best_iter trees. Throws kSchemaMismatch on column count.
Eigen::VectorXd PredictGbm(const BoostedModel& model, const Eigen::MatrixXd& x);

// x holds covariates only; the treatment column is appended as the last
// feature and set to 1 and 0 in turn.
Eigen::VectorXd PredictIte(const BoostedModel& model, const Eigen::MatrixXd& x);

// Covariates with t appended as the last column.
Eigen::MatrixXd AppendTreatment(const Eigen::MatrixXd& x,
                                const Eigen::VectorXi& t);

}  // namespace causalbench

#endif  // CAUSALBENCH_BOOST_H_
