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

#include "causalbench/boost.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "causalbench/errors.h"
#include "causalbench/random.h"

namespace causalbench {
namespace {

struct FeatureBins {
  std::vector<double> thresholds;   // ascending
  std::vector<std::uint16_t> bins;  // per row: first threshold index >= x
};

FeatureBins BuildBins(const Eigen::MatrixXd& x, int f,
                      const std::vector<int>& train_rows,
                      const GbmOptions& opts) {
  std::vector<double> values;
  values.reserve(train_rows.size());
  for (int i : train_rows) values.push_back(x(i, f));
  std::sort(values.begin(), values.end());
  std::vector<double> uniq = values;
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());

  FeatureBins fb;
  if (static_cast<std::int64_t>(train_rows.size()) <= opts.exact_threshold_rows) {
    for (std::size_t k = 0; k + 1 < uniq.size(); ++k) {
      fb.thresholds.push_back(0.5 * (uniq[k] + uniq[k + 1]));
    }
  } else {
    const std::size_t m = values.size();
    for (int k = 1; k <= opts.max_candidates; ++k) {
      const double v = values[k * m / (opts.max_candidates + 1)];
      auto next = std::upper_bound(uniq.begin(), uniq.end(), v);
      if (next == uniq.end()) continue;
      const double thr = 0.5 * (v + *next);
      if (fb.thresholds.empty() || thr > fb.thresholds.back()) {
        fb.thresholds.push_back(thr);
      }
    }
  }
  if (fb.thresholds.size() >= 65535) {
    Fail(ErrorCode::kConfig, "too many split candidates; lower exact_threshold_rows");
  }
  fb.bins.resize(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    fb.bins[i] = static_cast<std::uint16_t>(
        std::lower_bound(fb.thresholds.begin(), fb.thresholds.end(), x(i, f)) -
        fb.thresholds.begin());
  }
  return fb;
}

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<FeatureBins>& bins, const Eigen::VectorXd& w,
              const Eigen::VectorXd& r, int max_depth, double min_weight)
      : bins_(bins), w_(w), r_(r), max_depth_(max_depth), min_weight_(min_weight) {}

  Tree Build(const std::vector<int>& rows) {
    Tree tree;
    tree_ = &tree;
    Grow(rows, 0);
    return tree;
  }

 private:
  int Grow(const std::vector<int>& rows, int depth) {
    double w_sum = 0.0, s_sum = 0.0, ss = 0.0;
    for (int i : rows) {
      w_sum += w_[i];
      s_sum += w_[i] * r_[i];
      ss += w_[i] * r_[i] * r_[i];
    }
    const int id = static_cast<int>(tree_->nodes.size());
    tree_->nodes.push_back({});
    tree_->nodes[id].value = s_sum / w_sum;
    if (depth >= max_depth_ || rows.size() < 2) return id;

    int best_f = -1, best_k = -1;
    double best_gain = 1e-15 * ss;
    const double parent = s_sum * s_sum / w_sum;
    for (std::size_t f = 0; f < bins_.size(); ++f) {
      const FeatureBins& fb = bins_[f];
      const std::size_t nb = fb.thresholds.size();
      if (nb == 0) continue;
      hist_w_.assign(nb + 1, 0.0);
      hist_s_.assign(nb + 1, 0.0);
      for (int i : rows) {
        hist_w_[fb.bins[i]] += w_[i];
        hist_s_[fb.bins[i]] += w_[i] * r_[i];
      }
      double wl = 0.0, sl = 0.0;
      for (std::size_t k = 0; k < nb; ++k) {
        wl += hist_w_[k];
        sl += hist_s_[k];
        const double wr = w_sum - wl;
        if (wl < min_weight_ || wr < min_weight_ || wl <= 0.0 || wr <= 0.0) {
          continue;
        }
        const double sr = s_sum - sl;
        const double gain = sl * sl / wl + sr * sr / wr - parent;
        if (gain > best_gain) {
          best_gain = gain;
          best_f = static_cast<int>(f);
          best_k = static_cast<int>(k);
        }
      }
    }
    if (best_f < 0) return id;

    std::vector<int> left, right;
    const std::vector<std::uint16_t>& b = bins_[best_f].bins;
    for (int i : rows) (b[i] <= best_k ? left : right).push_back(i);
    const int l = Grow(left, depth + 1);
    const int r = Grow(right, depth + 1);
    TreeNode& node = tree_->nodes[id];
    node.feature = best_f;
    node.threshold = bins_[best_f].thresholds[best_k];
    node.left = l;
    node.right = r;
    return id;
  }

  const std::vector<FeatureBins>& bins_;
  const Eigen::VectorXd& w_;
  const Eigen::VectorXd& r_;
  int max_depth_;
  double min_weight_;
  Tree* tree_ = nullptr;
  std::vector<double> hist_w_;
  std::vector<double> hist_s_;
};

double WeightedMse(const std::vector<int>& rows, const Eigen::VectorXd& y,
                   const Eigen::VectorXd& f, const Eigen::VectorXd& w) {
  double num = 0.0, den = 0.0;
  for (int i : rows) {
    const double e = y[i] - f[i];
    num += w[i] * e * e;
    den += w[i];
  }
  return num / den;
}

}  // namespace

double Tree::Predict(const double* row, Eigen::Index stride) const {
  int id = 0;
  while (nodes[id].feature >= 0) {
    const TreeNode& node = nodes[id];
    id = row[node.feature * stride] <= node.threshold ? node.left : node.right;
  }
  return nodes[id].value;
}

int Tree::Depth() const {
  std::vector<std::pair<int, int>> stack = {{0, 0}};
  int depth = 0;
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    depth = std::max(depth, d);
    if (nodes[id].feature >= 0) {
      stack.push_back({nodes[id].left, d + 1});
      stack.push_back({nodes[id].right, d + 1});
    }
  }
  return depth;
}

BoostedModel FitGbm(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                    const Eigen::VectorXd& weights, const GbmOptions& opts) {
  const Eigen::Index n = x.rows();
  const int p = static_cast<int>(x.cols());
  if (y.size() != n || weights.size() != n) {
    Fail(ErrorCode::kLengthMismatch, "x, y and weights differ in rows");
  }
  if (p == 0) Fail(ErrorCode::kConfig, "design has no columns");
  if (!x.allFinite() || !y.allFinite() || !weights.allFinite()) {
    Fail(ErrorCode::kNonFinite, "GBM inputs not finite");
  }
  if (opts.max_depth < 1 || opts.max_trees < 0 || !(opts.learning_rate > 0.0) ||
      opts.val_frac < 0.0 || opts.val_frac >= 1.0 || opts.patience < 1) {
    Fail(ErrorCode::kConfig, "invalid GBM options");
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (weights[i] < 0.0) Fail(ErrorCode::kConfig, "weights must be >= 0");
    total += weights[i];
  }
  if (!(total > 0.0)) Fail(ErrorCode::kConfig, "weights must have positive total");

  const int strat_col = opts.stratify_column < 0 ? p - 1 : opts.stratify_column;
  if (strat_col >= p) Fail(ErrorCode::kConfig, "stratify column out of range");

  // Seeded holdout over positive-weight rows, stratified by the value of the
  // stratify column when it takes few distinct values.
  std::map<double, std::vector<int>> groups;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (weights[i] > 0.0) groups[x(i, strat_col)].push_back(static_cast<int>(i));
  }
  if (groups.size() > 16) {
    std::vector<int> all;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (weights[i] > 0.0) all.push_back(static_cast<int>(i));
    }
    groups.clear();
    groups[0.0] = std::move(all);
  }
  std::vector<int> train_rows, val_rows;
  int g = 0;
  for (auto& [value, rows] : groups) {
    Rng rng = Rng::ForStream(opts.seed, "gbm/split/" + std::to_string(g++));
    std::shuffle(rows.begin(), rows.end(), rng.engine());
    const std::size_t n_val = static_cast<std::size_t>(
        std::llround(opts.val_frac * static_cast<double>(rows.size())));
    val_rows.insert(val_rows.end(), rows.begin(), rows.begin() + n_val);
    train_rows.insert(train_rows.end(), rows.begin() + n_val, rows.end());
  }
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(val_rows.begin(), val_rows.end());
  if (train_rows.empty()) Fail(ErrorCode::kTooFewSamples, "empty training split");

  BoostedModel model;
  model.learning_rate = opts.learning_rate;
  model.num_features = p;
  model.treatment_column = p - 1;
  double w_train = 0.0, wy = 0.0;
  for (int i : train_rows) {
    w_train += weights[i];
    wy += weights[i] * y[i];
  }
  model.init = wy / w_train;

  bool constant = true;
  for (int i : train_rows) {
    if (y[i] != y[train_rows.front()]) {
      constant = false;
      break;
    }
  }
  if (constant) {
    model.degenerate_target = true;
    model.best_iter = 0;
    return model;
  }

  std::vector<FeatureBins> bins;
  bins.reserve(p);
  for (int f = 0; f < p; ++f) bins.push_back(BuildBins(x, f, train_rows, opts));

  Eigen::VectorXd fitted = Eigen::VectorXd::Constant(n, model.init);
  Eigen::VectorXd resid = Eigen::VectorXd::Zero(n);
  TreeBuilder builder(bins, weights, resid, opts.max_depth,
                      opts.min_leaf_weight_fraction * w_train);
  const bool early_stop = !val_rows.empty();
  double best_val = early_stop ? WeightedMse(val_rows, y, fitted, weights) : 0.0;
  int best_iter = 0;
  const Eigen::Index stride = x.outerStride();
  for (int m = 1; m <= opts.max_trees; ++m) {
    for (int i : train_rows) resid[i] = y[i] - fitted[i];
    Tree tree = builder.Build(train_rows);
    for (int i : train_rows) {
      fitted[i] += opts.learning_rate * tree.Predict(&x(i, 0), stride);
    }
    for (int i : val_rows) {
      fitted[i] += opts.learning_rate * tree.Predict(&x(i, 0), stride);
    }
    model.trees.push_back(std::move(tree));
    model.train_loss.push_back(WeightedMse(train_rows, y, fitted, weights));
    if (early_stop) {
      const double v = WeightedMse(val_rows, y, fitted, weights);
      model.validation_loss.push_back(v);
      if (v < best_val) {
        best_val = v;
        best_iter = m;
      }
      if (m - best_iter >= opts.patience) break;
    } else {
      best_iter = m;
    }
  }
  model.best_iter = best_iter;
  return model;
}

Eigen::VectorXd PredictGbm(const BoostedModel& model, const Eigen::MatrixXd& x) {
  if (x.cols() != model.num_features) {
    Fail(ErrorCode::kSchemaMismatch,
         "expected " + std::to_string(model.num_features) + " columns, got " +
             std::to_string(x.cols()));
  }
  if (model.best_iter > static_cast<int>(model.trees.size())) {
    Fail(ErrorCode::kSchemaMismatch, "best_iter exceeds tree count");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Constant(x.rows(), model.init);
  const Eigen::Index stride = x.outerStride();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (int m = 0; m < model.best_iter; ++m) {
      out[i] += model.learning_rate * model.trees[m].Predict(&x(i, 0), stride);
    }
  }
  return out;
}

Eigen::MatrixXd AppendTreatment(const Eigen::MatrixXd& x,
                                const Eigen::VectorXi& t) {
  if (x.rows() != t.size()) Fail(ErrorCode::kLengthMismatch, "x and t differ");
  Eigen::MatrixXd out(x.rows(), x.cols() + 1);
  out.leftCols(x.cols()) = x;
  out.col(x.cols()) = t.cast<double>();
  return out;
}

Eigen::VectorXd PredictIte(const BoostedModel& model, const Eigen::MatrixXd& x) {
  if (x.cols() + 1 != model.num_features ||
      model.treatment_column != model.num_features - 1) {
    Fail(ErrorCode::kSchemaMismatch, "covariate columns do not match the model");
  }
  Eigen::MatrixXd xt(x.rows(), x.cols() + 1);
  xt.leftCols(x.cols()) = x;
  xt.col(x.cols()).setOnes();
  const Eigen::VectorXd y1 = PredictGbm(model, xt);
  xt.col(x.cols()).setZero();
  const Eigen::VectorXd y0 = PredictGbm(model, xt);
  return y1 - y0;
}

}  // namespace causalbench
