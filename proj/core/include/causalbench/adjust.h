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


#ifndef CAUSALBENCH_ADJUST_H_
#define CAUSALBENCH_ADJUST_H_

#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace causalbench {

struct MergeEvent {
  int from = 0;  // stratum index before the merge
  int into = 0;
};

// Quantile stratification of a score. Strata are 0-based; stratum j holds
// scores in [boundaries[j-1], boundaries[j]).
struct Stratification {
  int requested = 0;
  std::vector<double> boundaries;
  std::vector<int> assignment;
  std::vector<double> q;
  std::vector<int> counts;
  std::vector<int> treated_counts;
  std::vector<MergeEvent> merges;

  int size() const { return static_cast<int>(q.size()); }
};

// Cut points are sorted[floor(k*n/J)], k = 1..J-1, deduplicated. A stratum
// missing an arm is merged into its left neighbour (right for the first).
// A single surviving stratum is allowed. Throws kTooFewSamples when an arm is
// empty overall.
Stratification Stratify(const Eigen::VectorXd& scores, const Eigen::VectorXi& t,
                        int num_strata = 5);

// sum_j q(j) * (mean treated y(j) - mean control y(j)). Throws kEmptyArm.
double AteStratified(const Eigen::VectorXd& y, const Eigen::VectorXi& t,
                     const Stratification& strat);

// Unadjusted difference of group means.
double AteDifferenceOfMeans(const Eigen::VectorXd& y, const Eigen::VectorXi& t);

struct MatchOptions {
  bool with_replacement = true;
  std::optional<double> caliper;
};

// Matches of sample i are the opposite-arm samples at positions
// [begin[i], end[i]) of that arm's score-sorted index list. Ties sit next to
// each other in sorted order, so every tie set is a contiguous range.
class MatchSet {
 public:
  MatchSet() = default;
  MatchSet(std::vector<int> treated_sorted, std::vector<int> control_sorted,
           std::vector<int> treatment, std::vector<int> begin,
           std::vector<int> end, MatchOptions options);

  int size() const { return static_cast<int>(begin_.size()); }
  bool retained(int i) const { return end_[i] > begin_[i]; }
  int MatchCount(int i) const { return end_[i] - begin_[i]; }
  // Sample indices of the matches of i, in score order.
  std::vector<int> Matches(int i) const;
  int num_retained() const { return num_retained_; }
  double retained_fraction() const;
  const MatchOptions& options() const { return options_; }

  // Per-sample frequency weights of the matched dataset: a retained sample
  // counts once for itself plus 1/N(J(k)) for every k that matched it.
  Eigen::VectorXd MatchedWeights() const;

  const std::vector<int>& OppositeSorted(int i) const {
    return treatment_[i] == 1 ? control_sorted_ : treated_sorted_;
  }
  int begin(int i) const { return begin_[i]; }
  int end(int i) const { return end_[i]; }

 private:
  std::vector<int> treated_sorted_;
  std::vector<int> control_sorted_;
  std::vector<int> treatment_;
  std::vector<int> begin_;
  std::vector<int> end_;
  MatchOptions options_;
  int num_retained_ = 0;
};

// With replacement: all opposite-arm samples at minimal score distance.
// Without replacement: greedy 1:1 pairing, smaller arm first in score order.
// Throws kNoMatches if an arm is empty.
MatchSet Match1Nn(const Eigen::VectorXd& scores, const Eigen::VectorXi& t,
                  const MatchOptions& opts = {});

// Mean over retained samples of y(1)_hat - y(0)_hat, imputing the missing arm
// by the mean outcome of the matches.
double AteMatched(const Eigen::VectorXd& y, const Eigen::VectorXi& t,
                  const MatchSet& ms);

enum class IpwNormalization { kHajek, kHorvitzThompson };

struct WeightVector {
  Eigen::VectorXd raw;  // t/e + (1-t)/(1-e)
};

WeightVector IpwWeights(const Eigen::VectorXd& scores,
                        const Eigen::VectorXi& t);

// Throws kZeroGroupWeight if either arm carries no weight.
double AteIpw(const Eigen::VectorXd& y, const Eigen::VectorXi& t,
              const WeightVector& w,
              IpwNormalization mode = IpwNormalization::kHajek);

}  // namespace causalbench

#endif  // CAUSALBENCH_ADJUST_H_
