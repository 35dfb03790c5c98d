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


#ifndef CAUSALBENCH_HARNESS_H_
#define CAUSALBENCH_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "causalbench/adjust.h"
#include "causalbench/balrep.h"
#include "causalbench/boost.h"
#include "causalbench/propensity.h"
#include "causalbench/synthgen.h"

namespace causalbench {

enum class EstimatorKind { kPss, kPsm, kIpw, kCbps, kCfr };

inline constexpr EstimatorKind kAllEstimators[] = {
    EstimatorKind::kPss, EstimatorKind::kPsm, EstimatorKind::kIpw,
    EstimatorKind::kCbps, EstimatorKind::kCfr};

std::string EstimatorName(EstimatorKind kind);
// Case-insensitive. Throws kConfig.
EstimatorKind ParseEstimator(const std::string& name);

std::vector<CovariateCombination> DefaultCombos();

struct EstimatorOptions {
  PropensityOptions propensity;
  int strata = 5;
  MatchOptions matching;
  IpwNormalization ipw_mode = IpwNormalization::kHajek;
  GbmOptions gbm;
  CfrOptions cfr;
  // Roles left out of the propensity design even when present in the combo.
  std::vector<CovariateRole> propensity_exclude;
};

struct SweepConfig {
  DgpConfig dgp;
  std::vector<CovariateCombination> combos = DefaultCombos();
  std::vector<EstimatorKind> estimators = {std::begin(kAllEstimators),
                                           std::end(kAllEstimators)};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  EstimatorOptions options;
  // Worker threads for cell evaluation; results do not depend on it.
  int threads = 1;

  // Throws kConfig.
  void Validate() const;
};

struct CellResult {
  EstimatorKind estimator = EstimatorKind::kPss;
  CovariateCombination combo;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error_code;
  std::string error_message;
  double ate_true = 0.0;
  double ate_hat = 0.0;
  double pehe = 0.0;       // mean squared ITE error
  double root_pehe = 0.0;  // its square root
  double eps_ate = 0.0;
  // Diagnostics; unused fields stay at their defaults.
  int n_clipped = 0;
  bool propensity_converged = true;
  int strata_used = 0;
  double retained_fraction = 1.0;
  double max_abs_smd = 0.0;
  int gbm_trees = 0;
};

struct CellSummary {
  EstimatorKind estimator = EstimatorKind::kPss;
  CovariateCombination combo;
  int n_ok = 0;
  int n_failed = 0;
  double median_pehe = 0.0;
  double median_root_pehe = 0.0;
  double median_eps_ate = 0.0;
  double sd_pehe = 0.0;
  double sd_eps_ate = 0.0;
};

struct SweepReport {
  std::string tool_version;
  std::string config_hash;
  std::string timestamp;
  SweepConfig config;
  std::vector<CellResult> cells;  // ordered by seed, combo, estimator
  std::vector<CellSummary> summaries;  // ordered by combo, estimator

  const CellSummary* Find(EstimatorKind e, const CovariateCombination& c) const;
};

// Derived per-cell seed shared by the GBM split and the CFR initialization.
std::uint64_t CellSeed(std::uint64_t seed, const CovariateCombination& combo,
                       EstimatorKind estimator);

// Runs one estimator on one dataset. Errors are captured in the result.
CellResult RunCell(const LabeledDataset& ds, const CovariateCombination& combo,
                   EstimatorKind estimator, const EstimatorOptions& opts);

SweepReport RunSweep(const SweepConfig& cfg);

std::vector<CellSummary> Summarize(const SweepConfig& cfg,
                                   const std::vector<CellResult>& cells);

// Hash of the configuration content that affects results.
std::string ConfigHash(const SweepConfig& cfg);

struct CriterionCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Ordering criteria on the sweep medians: best {C,A} PEHE, worst {C,Z} in both
// metrics, and {C} vs {C,A} ATE neutrality.
std::vector<CriterionCheck> EvaluateSweepCriteria(const SweepReport& report);

}  // namespace causalbench

#endif  // CAUSALBENCH_HARNESS_H_
