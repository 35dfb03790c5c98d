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

#include "causalbench/adjust.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <utility>

#include "causalbench/errors.h"
#include "causalbench/numeric.h"

namespace causalbench {
namespace {

void CheckScoresAndTreatment(const Eigen::VectorXd& scores,
                             const Eigen::VectorXi& t) {
  if (scores.size() != t.size()) {
    Fail(ErrorCode::kLengthMismatch, "scores and t differ in length");
  }
  if (!scores.allFinite()) Fail(ErrorCode::kNonFinite, "scores not finite");
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    if (t[i] != 0 && t[i] != 1) Fail(ErrorCode::kConfig, "t must be binary");
  }
}

std::pair<int, int> ArmCounts(const Eigen::VectorXi& t) {
  const int treated = t.sum();
  return {treated, static_cast<int>(t.size()) - treated};
}

}  // namespace

Stratification Stratify(const Eigen::VectorXd& scores, const Eigen::VectorXi& t,
                        int num_strata) {
  CheckScoresAndTreatment(scores, t);
  if (num_strata < 1) Fail(ErrorCode::kConfig, "number of strata must be >= 1");
  const auto [n_treated, n_control] = ArmCounts(t);
  if (n_treated == 0 || n_control == 0) {
    Fail(ErrorCode::kTooFewSamples, "stratification needs both arms");
  }
  const std::int64_t n = scores.size();
  std::vector<double> sorted(scores.data(), scores.data() + n);
  std::sort(sorted.begin(), sorted.end());

  Stratification out;
  out.requested = num_strata;
  for (int k = 1; k < num_strata; ++k) {
    const double c = sorted[static_cast<std::size_t>(k * n / num_strata)];
    if (c > sorted.front() && (out.boundaries.empty() || c > out.boundaries.back())) {
      out.boundaries.push_back(c);
    }
  }

  auto stratum_of = [&](double s) {
    return static_cast<int>(
        std::upper_bound(out.boundaries.begin(), out.boundaries.end(), s) -
        out.boundaries.begin());
  };
  std::vector<int> counts(out.boundaries.size() + 1, 0);
  std::vector<int> treated(out.boundaries.size() + 1, 0);
  for (std::int64_t i = 0; i < n; ++i) {
    const int j = stratum_of(scores[i]);
    ++counts[j];
    treated[j] += t[i];
  }
  for (;;) {
    int bad = -1;
    for (std::size_t j = 0; j < counts.size(); ++j) {
      if (treated[j] == 0 || treated[j] == counts[j]) {
        bad = static_cast<int>(j);
        break;
      }
    }
    if (bad < 0) break;
    const int into = bad > 0 ? bad - 1 : 1;
    const int lo = std::min(bad, into);
    out.merges.push_back({bad, into});
    counts[lo] += counts[lo + 1];
    treated[lo] += treated[lo + 1];
    counts.erase(counts.begin() + lo + 1);
    treated.erase(treated.begin() + lo + 1);
    out.boundaries.erase(out.boundaries.begin() + lo);
  }

  out.assignment.resize(n);
  for (std::int64_t i = 0; i < n; ++i) out.assignment[i] = stratum_of(scores[i]);
  out.counts = counts;
  out.treated_counts = treated;
  out.q.resize(counts.size());
  for (std::size_t j = 0; j < counts.size(); ++j) {
    out.q[j] = static_cast<double>(counts[j]) / static_cast<double>(n);
  }
  return out;
}

double AteDifferenceOfMeans(const Eigen::VectorXd& y, const Eigen::VectorXi& t) {
  if (y.size() != t.size()) Fail(ErrorCode::kLengthMismatch, "y and t differ");
  double sum_t = 0.0, sum_c = 0.0;
  int n_t = 0, n_c = 0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (t[i] == 1) {
      sum_t += y[i];
      ++n_t;
    } else {
      sum_c += y[i];
      ++n_c;
    }
  }
  if (n_t == 0 || n_c == 0) Fail(ErrorCode::kEmptyArm, "an arm is empty");
  return sum_t / n_t - sum_c / n_c;
}

double AteStratified(const Eigen::VectorXd& y, const Eigen::VectorXi& t,
                     const Stratification& strat) {
  if (y.size() != t.size() ||
      static_cast<std::size_t>(y.size()) != strat.assignment.size()) {
    Fail(ErrorCode::kLengthMismatch, "stratification does not cover the data");
  }
  const int j_count = strat.size();
  std::vector<double> sum_t(j_count, 0.0), sum_c(j_count, 0.0);
  std::vector<int> n_t(j_count, 0), n_c(j_count, 0);
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const int j = strat.assignment[i];
    if (t[i] == 1) {
      sum_t[j] += y[i];
      ++n_t[j];
    } else {
      sum_c[j] += y[i];
      ++n_c[j];
    }
  }
  double ate = 0.0;
  for (int j = 0; j < j_count; ++j) {
    if (n_t[j] == 0 || n_c[j] == 0) {
      Fail(ErrorCode::kEmptyArm, "stratum " + std::to_string(j) + " lacks an arm");
    }
    ate += strat.q[j] * (sum_t[j] / n_t[j] - sum_c[j] / n_c[j]);
  }
  return ate;
}

MatchSet::MatchSet(std::vector<int> treated_sorted,
                   std::vector<int> control_sorted, std::vector<int> treatment,
                   std::vector<int> begin, std::vector<int> end,
                   MatchOptions options)
    : treated_sorted_(std::move(treated_sorted)),
      control_sorted_(std::move(control_sorted)),
      treatment_(std::move(treatment)),
      begin_(std::move(begin)),
      end_(std::move(end)),
      options_(options) {
  for (std::size_t i = 0; i < begin_.size(); ++i) {
    if (end_[i] > begin_[i]) ++num_retained_;
  }
}

std::vector<int> MatchSet::Matches(int i) const {
  const std::vector<int>& opp = OppositeSorted(i);
  return {opp.begin() + begin_[i], opp.begin() + end_[i]};
}

double MatchSet::retained_fraction() const {
  return begin_.empty() ? 0.0
                        : static_cast<double>(num_retained_) /
                              static_cast<double>(begin_.size());
}

Eigen::VectorXd MatchSet::MatchedWeights() const {
  const int n = size();
  // Difference arrays over positions in each arm's sorted list.
  std::vector<double> diff_t(treated_sorted_.size() + 1, 0.0);
  std::vector<double> diff_c(control_sorted_.size() + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    if (!retained(i)) continue;
    std::vector<double>& diff = treatment_[i] == 1 ? diff_c : diff_t;
    const double share = 1.0 / MatchCount(i);
    diff[begin_[i]] += share;
    diff[end_[i]] -= share;
  }
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (retained(i)) w[i] = 1.0;
  }
  auto accumulate = [&](const std::vector<int>& sorted,
                        const std::vector<double>& diff) {
    double run = 0.0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      run += diff[k];
      w[sorted[k]] += run;
    }
  };
  accumulate(treated_sorted_, diff_t);
  accumulate(control_sorted_, diff_c);
  // Round off residue of the running sums.
  for (int i = 0; i < n; ++i) {
    if (std::abs(w[i]) < 1e-12) w[i] = 0.0;
  }
  return w;
}

MatchSet Match1Nn(const Eigen::VectorXd& scores, const Eigen::VectorXi& t,
                  const MatchOptions& opts) {
  CheckScoresAndTreatment(scores, t);
  if (opts.caliper && !(*opts.caliper >= 0.0)) {
    Fail(ErrorCode::kConfig, "caliper must be nonnegative");
  }
  const auto [n_treated, n_control] = ArmCounts(t);
  if (n_treated == 0 || n_control == 0) {
    Fail(ErrorCode::kNoMatches, "matching needs both arms");
  }
  const int n = static_cast<int>(scores.size());
  const std::vector<int> order = StableArgsort(AsSpan(scores));
  std::vector<int> treated_sorted, control_sorted;
  for (int i : order) (t[i] == 1 ? treated_sorted : control_sorted).push_back(i);
  std::vector<int> treatment(t.data(), t.data() + n);
  std::vector<int> begin(n, 0), end(n, 0);

  auto within_caliper = [&](double d) {
    return !opts.caliper || d <= *opts.caliper;
  };

  if (opts.with_replacement) {
    std::vector<double> ts(treated_sorted.size()), cs(control_sorted.size());
    for (std::size_t k = 0; k < ts.size(); ++k) ts[k] = scores[treated_sorted[k]];
    for (std::size_t k = 0; k < cs.size(); ++k) cs[k] = scores[control_sorted[k]];
    for (int i = 0; i < n; ++i) {
      const std::vector<double>& s = t[i] == 1 ? cs : ts;
      const double x = scores[i];
      const int m = static_cast<int>(s.size());
      const int pos = static_cast<int>(std::lower_bound(s.begin(), s.end(), x) - s.begin());
      const double d_right = pos < m ? s[pos] - x : INFINITY;
      const double d_left = pos > 0 ? x - s[pos - 1] : INFINITY;
      const double d = std::min(d_left, d_right);
      if (!within_caliper(d)) continue;
      int lo = pos, hi = pos;
      if (d_left == d) {
        const double v = s[pos - 1];
        lo = static_cast<int>(std::lower_bound(s.begin(), s.begin() + pos, v) - s.begin());
      }
      if (d_right == d) {
        const double v = s[pos];
        hi = static_cast<int>(std::upper_bound(s.begin() + pos, s.end(), v) - s.begin());
      }
      begin[i] = lo;
      end[i] = hi;
    }
  } else {
    // Greedy pairing: the smaller arm (treated on ties) picks, in score order,
    // the nearest unused unit of the other arm. Equidistant candidates resolve
    // to the lower score.
    const bool treated_pick = n_treated <= n_control;
    const std::vector<int>& pickers = treated_pick ? treated_sorted : control_sorted;
    const std::vector<int>& pool = treated_pick ? control_sorted : treated_sorted;
    std::set<int> free_pos;
    for (int k = 0; k < static_cast<int>(pool.size()); ++k) free_pos.insert(free_pos.end(), k);
    std::vector<int> pos_in_sorted(n, 0);
    for (int k = 0; k < static_cast<int>(pickers.size()); ++k) pos_in_sorted[pickers[k]] = k;
    for (int i : pickers) {
      if (free_pos.empty()) break;
      const double x = scores[i];
      // First free position whose score is >= x.
      const int first_ge = static_cast<int>(
          std::lower_bound(pool.begin(), pool.end(), x,
                           [&](int idx, double v) { return scores[idx] < v; }) -
          pool.begin());
      auto r_it = free_pos.lower_bound(first_ge);
      int best = -1;
      double best_d = INFINITY;
      if (r_it != free_pos.begin()) {
        const int p = *std::prev(r_it);
        best = p;
        best_d = x - scores[pool[p]];
      }
      if (r_it != free_pos.end()) {
        const double d = scores[pool[*r_it]] - x;
        if (d < best_d) {
          best = *r_it;
          best_d = d;
        }
      }
      if (best < 0 || !within_caliper(best_d)) continue;
      free_pos.erase(best);
      begin[i] = best;
      end[i] = best + 1;
      const int partner = pool[best];
      begin[partner] = pos_in_sorted[i];
      end[partner] = pos_in_sorted[i] + 1;
    }
  }
  return MatchSet(std::move(treated_sorted), std::move(control_sorted),
                  std::move(treatment), std::move(begin), std::move(end), opts);
}

double AteMatched(const Eigen::VectorXd& y, const Eigen::VectorXi& t,
                  const MatchSet& ms) {
  if (y.size() != t.size() || y.size() != ms.size()) {
    Fail(ErrorCode::kLengthMismatch, "match set does not cover the data");
  }
  if (ms.num_retained() == 0) Fail(ErrorCode::kNoMatches, "no sample retained");
  double sum1 = 0.0, sum0 = 0.0;
  for (int i = 0; i < ms.size(); ++i) {
    if (!ms.retained(i)) continue;
    const std::vector<int>& opp = ms.OppositeSorted(i);
    double acc = 0.0;
    for (int k = ms.begin(i); k < ms.end(i); ++k) acc += y[opp[k]];
    const double imputed = acc / ms.MatchCount(i);
    if (t[i] == 1) {
      sum1 += y[i];
      sum0 += imputed;
    } else {
      sum1 += imputed;
      sum0 += y[i];
    }
  }
  const double n = static_cast<double>(ms.num_retained());
  return sum1 / n - sum0 / n;
}

WeightVector IpwWeights(const Eigen::VectorXd& scores,
                        const Eigen::VectorXi& t) {
  CheckScoresAndTreatment(scores, t);
  WeightVector w;
  w.raw.resize(scores.size());
  for (Eigen::Index i = 0; i < scores.size(); ++i) {
    const double e = scores[i];
    if (!(e > 0.0 && e < 1.0)) Fail(ErrorCode::kConfig, "scores must lie in (0,1)");
    w.raw[i] = t[i] == 1 ? 1.0 / e : 1.0 / (1.0 - e);
  }
  return w;
}

double AteIpw(const Eigen::VectorXd& y, const Eigen::VectorXi& t,
              const WeightVector& w, IpwNormalization mode) {
  if (y.size() != t.size() || w.raw.size() != t.size()) {
    Fail(ErrorCode::kLengthMismatch, "weights do not cover the data");
  }
  double wy_t = 0.0, wy_c = 0.0, w_t = 0.0, w_c = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double wi = w.raw[i];
    if (!(wi >= 0.0) || !std::isfinite(wi)) {
      Fail(ErrorCode::kConfig, "weights must be finite and >= 0");
    }
    if (t[i] == 1) {
      wy_t += wi * y[i];
      w_t += wi;
    } else {
      wy_c += wi * y[i];
      w_c += wi;
    }
  }
  if (w_t <= 0.0 || w_c <= 0.0) {
    Fail(ErrorCode::kZeroGroupWeight, "an arm carries zero weight");
  }
  if (mode == IpwNormalization::kHajek) return wy_t / w_t - wy_c / w_c;
  const double n = static_cast<double>(y.size());
  return wy_t / n - wy_c / n;
}

}  // namespace causalbench
