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


#ifndef CAUSALBENCH_THEORY_H_
#define CAUSALBENCH_THEORY_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace causalbench {

enum class NcKind { kAdjustment, kInstrument, kMediator, kCollider };
enum class AssignmentForm { kLogistic, kMixture };
enum class ProxyMode { kStructural, kFitted };

std::string NcKindName(NcKind kind);
NcKind ParseNcKind(const std::string& name);

// Linear outcome model E[y(t) | C = c] = gamma + tau * t + beta . c with one
// non-confounding covariate NC whose causal role is set by nc_kind.
struct LinearSemSpec {
  double gamma = 0.0;
  double tau = 1.0;
  std::vector<double> beta = {1.0};
  // Proxy coefficients: P = alpha0 . C without NC, alpha1 . C + alpha2 * NC
  // with it.
  std::vector<double> alpha0 = {1.0};
  std::vector<double> alpha1 = {1.0};
  double alpha2 = 1.0;
  double proxy_noise_sd = 0.0;
  ProxyMode proxy_mode = ProxyMode::kStructural;

  // Treatment assignment. Logistic: t ~ sigmoid(assign_c . C + assign_nc * NC).
  // Mixture: 0.5 * sigmoid(assign_c . C) + 0.5 * sigmoid(assign_nc * NC).
  // NC enters only for instrument-like NC.
  std::vector<double> assign_c = {1.0};
  double assign_nc = 1.0;
  AssignmentForm assignment = AssignmentForm::kLogistic;

  NcKind nc_kind = NcKind::kInstrument;
  // Adjustment: NC -> y coefficient. Mediator: NC -> y coefficient, with the
  // direct t effect reduced so the total effect stays tau.
  double nc_to_y = 1.0;
  double mediator_kappa = 1.0;  // t -> NC for mediator-like NC
  double collider_t = 1.0;      // t -> NC for collider-like NC
  double collider_y = 1.0;      // y -> NC for collider-like NC
  double nc_noise_sd = 1.0;
  double outcome_noise_sd = 1.0;

  std::int64_t n = 100000;
  int replications = 20;
  int strata = 10;
  int nc_bins = 10;
  std::uint64_t seed = 0;

  int c_dim() const { return static_cast<int>(beta.size()); }
  // Throws kConfig.
  void Validate() const;
};

struct SemSample {
  Eigen::MatrixXd c;
  Eigen::VectorXd nc;
  Eigen::VectorXi t;
  Eigen::VectorXd y;
};

SemSample SimulateSem(const LinearSemSpec& spec, int replication);

// Proxy from C only, and from (C, NC).
Eigen::VectorXd ProxyWithoutNc(const LinearSemSpec& spec, const SemSample& s,
                               int replication);
Eigen::VectorXd ProxyWithNc(const LinearSemSpec& spec, const SemSample& s,
                            int replication);

struct DeltaEstimate {
  double empirical = 0.0;    // ATE estimate minus tau
  double closed_form = 0.0;  // beta . sum_j q(j) (mean C_t(j) - mean C_c(j))
};

DeltaEstimate DeltaD(const SemSample& s, const std::vector<double>& beta,
                     double tau);

DeltaEstimate DeltaFap(const SemSample& s, const Eigen::VectorXd& proxy,
                       int strata, const std::vector<double>& beta, double tau);

struct DeltaNcEstimate {
  double empirical = 0.0;
  // Stratum-level identity on the (C, NC) strata.
  double closed_form_strata = 0.0;
  // Double sum over strata and NC quantile bins.
  double closed_form_binned = 0.0;
  // Share of samples in (stratum, bin) cells lacking an arm.
  double dropped_mass = 0.0;
  // max over cells of |mean C - (mean P - alpha2 * mean NC) / alpha1|; only
  // meaningful for a noiseless structural proxy with scalar C.
  double conf_nc_max_abs_error = 0.0;
};

DeltaNcEstimate DeltaFapNc(const SemSample& s, const Eigen::VectorXd& proxy,
                           const LinearSemSpec& spec);

struct ColliderDecomposition {
  double empirical = 0.0;
  double imbalance_part = 0.0;
  // sum_j q(j) tau'(j), with tau'(j) the within-stratum OLS coefficient of t
  // in y ~ 1 + t + C, minus tau.
  double extra_term = 0.0;
  std::vector<double> tau_prime;
};

ColliderDecomposition ColliderBias(const SemSample& s,
                                   const Eigen::VectorXd& proxy, int strata,
                                   const std::vector<double>& beta, double tau);

// Scalar helpers for the cell relations of the proxy model.
double ConfounderGivenNc(double p_j, double nc, double alpha1, double alpha2);
double BalancedNcValue(double p_j, double alpha0, double alpha1, double alpha2);

struct McStat {
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean across replications
};

McStat Summarize(const std::vector<double>& values);

struct ErrorReport {
  int strata = 0;
  int replications = 0;
  McStat delta_d;
  McStat delta_d_closed;
  McStat delta_d_gap;  // empirical minus closed form, paired
  McStat delta_fap;
  McStat delta_fap_closed;
  McStat delta_fap_gap;
  McStat delta_fap_nc;
  McStat delta_fap_nc_closed_strata;
  McStat delta_fap_nc_closed_binned;
  McStat delta_fap_nc_gap;  // empirical minus strata identity, paired
  McStat nc_minus_fap;      // paired difference of the two adjustments
  McStat collider_extra;    // extra term on the (C, NC) strata
  McStat baseline_extra;    // extra term on the C-only strata
  double max_dropped_mass = 0.0;
  double max_conf_nc_error = 0.0;
  bool j1_collapse_exact = true;  // Delta_FAP at J=1 equals Delta_D bitwise
};

ErrorReport RunMonteCarlo(const LinearSemSpec& spec);

struct EquivalenceVerdict {
  NcKind kind = NcKind::kAdjustment;
  McStat delta;
  McStat delta_nc;
  McStat difference;
  bool equivalent = false;
};

// Reference scenario per NC kind used for the equivalence question.
LinearSemSpec DefaultEquivalenceSpec(NcKind kind);

// Equivalent iff |mean(delta_nc - delta)| < 3 paired standard errors, or the
// two adjustments agree exactly.
EquivalenceVerdict CheckEquivalence(const LinearSemSpec& spec);

// Randomized instrument-like configurations with structural proxies.
std::vector<LinearSemSpec> RandomInstrumentSpecs(int count, std::uint64_t seed,
                                                 std::int64_t n, int reps,
                                                 int strata);

struct LowerBoundResult {
  McStat delta_fap;
  McStat delta_fap_nc;
  double paired_se = 0.0;
  bool holds = false;  // |Delta_NC| >= |Delta| - 3 * paired_se
};

LowerBoundResult CheckLowerBound(const LinearSemSpec& spec);

struct TheoryGridConfig {
  std::int64_t n = 100000;
  int replications = 20;
  int strata = 10;
  std::uint64_t seed = 1;
  std::vector<double> gammas = {-1.0, 0.0, 2.0};
  std::vector<double> taus = {0.0, 1.0, 3.0};
  std::vector<double> betas = {0.0, 0.5, 2.0};
  int lower_bound_configs = 100;
  double lower_bound_pass_fraction = 0.95;
  std::vector<NcKind> equivalence_kinds = {NcKind::kAdjustment,
                                           NcKind::kInstrument,
                                           NcKind::kMediator,
                                           NcKind::kCollider};
};

struct InvariantResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct TheoryReport {
  std::vector<InvariantResult> invariants;
  std::vector<EquivalenceVerdict> verdicts;
  int lower_bound_holds = 0;
  int lower_bound_total = 0;
  bool AllPass() const;
};

// Closed-form agreement, J=1 collapse and beta=0 exactness over the
// (gamma, tau, beta) grid.
InvariantResult CheckClosedForms(const TheoryGridConfig& cfg);
InvariantResult CheckLowerBoundGrid(const TheoryGridConfig& cfg, int* holds,
                                    int* total);
InvariantResult CheckEquivalenceClaims(const TheoryGridConfig& cfg,
                                       std::vector<EquivalenceVerdict>* out);

TheoryReport VerifyTheory(const TheoryGridConfig& cfg);

}  // namespace causalbench

#endif  // CAUSALBENCH_THEORY_H_
