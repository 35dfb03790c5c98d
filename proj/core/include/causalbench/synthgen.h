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

// Labeled synthetic data with known covariate roles and ground-truth potential
// outcomes.
//
// Exogenous roots I, C, A are i.i.d. normal. Treatment is Bernoulli with a
// convex mixture of sigmoids of C, I and a per-sample noise term. The
// non-root variables are generated in topological order M -> y -> {Z, TI, YI},
// each as a sum of sigmoids of its parents plus scaled N(0, 1) noise. Both
// potential outcomes are obtained by re-running the structural equations for
// M and y with t forced to 0 and to 1 while reusing the same noise draws.

#ifndef CAUSALBENCH_SYNTHGEN_H_
#define CAUSALBENCH_SYNTHGEN_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace causalbench {

enum class CovariateRole {
  kInstrument,
  kConfounder,
  kAdjustment,
  kMediator,
  kCollider,
  kTreatmentInfluenced,
  kOutcomeInfluenced,
};

inline constexpr std::array<CovariateRole, 7> kAllRoles = {
    CovariateRole::kInstrument,          CovariateRole::kConfounder,
    CovariateRole::kAdjustment,          CovariateRole::kMediator,
    CovariateRole::kCollider,            CovariateRole::kTreatmentInfluenced,
    CovariateRole::kOutcomeInfluenced,
};

// Short tags: I, C, A, M, Z, TI, YI.
std::string_view RoleName(CovariateRole role);
std::optional<CovariateRole> ParseRole(std::string_view name);

// Ordered, duplicate-free list of roles selecting covariate blocks.
class CovariateCombination {
 public:
  CovariateCombination() = default;
  // Throws kConfig on duplicates.
  explicit CovariateCombination(std::vector<CovariateRole> roles);

  // "C,Z" style; throws kUnknownRole for unrecognised tags.
  static CovariateCombination Parse(std::string_view text);

  const std::vector<CovariateRole>& roles() const { return roles_; }
  bool Contains(CovariateRole role) const;
  // "{C,Z}" style label used in reports.
  std::string Label() const;
  // "C,Z" style, accepted by Parse.
  std::string ToString() const;

  friend bool operator==(const CovariateCombination&,
                         const CovariateCombination&) = default;

 private:
  std::vector<CovariateRole> roles_;
};

struct DgpConfig {
  std::int64_t n = 20000;
  // Block width per role, indexed by kAllRoles order.
  std::array<int, 7> dims = {1, 1, 1, 1, 1, 1, 1};
  double weight_low = 2.0;
  double weight_high = 5.0;
  // Variance of the exogenous normal law. Set to 25 for the "sd = 5" reading.
  double exo_variance = 5.0;
  double noise_scale = 0.1;
  // Treatment-probability mixture over sigma(C.W), sigma(I.W), sigma(eps_t).
  std::array<double, 3> mix = {0.4, 0.5, 0.1};
  std::uint64_t seed = 0;

  int dim(CovariateRole role) const { return dims[static_cast<int>(role)]; }
  // Throws kConfig when invariants are violated.
  void Validate() const;
};

struct StructuralWeights {
  Eigen::VectorXd c_to_t;   // W_C^t, dim C
  Eigen::VectorXd i_to_t;   // W_I^t, dim I
  Eigen::VectorXd t_to_m;   // W_t^M, dim M
  Eigen::VectorXd c_to_y;   // W_C^y, dim C
  Eigen::VectorXd m_to_y;   // W_M^y, dim M
  Eigen::VectorXd a_to_y;   // W_A^y, dim A
  Eigen::VectorXd t_to_z;   // W_t^Z, dim Z
  Eigen::VectorXd y_to_z;   // W_y^Z, dim Z
  Eigen::VectorXd t_to_ti;  // W_t^TI, dim TI
  Eigen::VectorXd y_to_yi;  // W_y^YI, dim YI
};

// Standard-normal draws for every endogenous equation. Shared by the factual
// and both counterfactual arms.
struct NoiseRecord {
  Eigen::VectorXd eps_t;
  Eigen::MatrixXd eps_m;
  Eigen::VectorXd eps_y;
  Eigen::MatrixXd eps_z;
  Eigen::MatrixXd eps_ti;
  Eigen::MatrixXd eps_yi;
};

struct ExogenousBlocks {
  Eigen::MatrixXd instrument;
  Eigen::MatrixXd confounder;
  Eigen::MatrixXd adjustment;
};

struct TreatmentDraw {
  Eigen::VectorXi t;
  Eigen::VectorXd p_true;
  Eigen::VectorXd eps_t;
};

struct NonRootValues {
  Eigen::MatrixXd mediator;
  Eigen::VectorXd y;
  Eigen::MatrixXd collider;
  Eigen::MatrixXd treatment_influenced;
  Eigen::MatrixXd outcome_influenced;
};

StructuralWeights DrawWeights(const DgpConfig& cfg);

ExogenousBlocks SampleExogenous(const DgpConfig& cfg);

TreatmentDraw AssignTreatment(const Eigen::MatrixXd& instrument,
                              const Eigen::MatrixXd& confounder,
                              const StructuralWeights& weights,
                              const DgpConfig& cfg);

NoiseRecord DrawNoise(const DgpConfig& cfg);

// Evaluates the non-root structural equations for the given treatment values
// (one per row; may be all 0 or all 1 for a counterfactual arm).
NonRootValues GenerateNonRoot(const Eigen::VectorXd& t,
                              const Eigen::MatrixXd& confounder,
                              const Eigen::MatrixXd& adjustment,
                              const StructuralWeights& weights,
                              const NoiseRecord& noise, double noise_scale);

// Immutable after construction; safe to share across threads.
class LabeledDataset {
 public:
  LabeledDataset(DgpConfig config, StructuralWeights weights,
                 std::map<CovariateRole, Eigen::MatrixXd> blocks,
                 Eigen::VectorXi t, Eigen::VectorXd y_factual,
                 std::optional<Eigen::VectorXd> y0,
                 std::optional<Eigen::VectorXd> y1,
                 std::optional<Eigen::VectorXd> p_true,
                 std::optional<NoiseRecord> noise);

  std::int64_t size() const { return t_.size(); }
  const DgpConfig& config() const { return config_; }
  const StructuralWeights& weights() const { return weights_; }
  bool HasRole(CovariateRole role) const { return blocks_.count(role) > 0; }
  // Throws kUnknownRole.
  const Eigen::MatrixXd& block(CovariateRole role) const;
  const std::map<CovariateRole, Eigen::MatrixXd>& blocks() const {
    return blocks_;
  }
  const Eigen::VectorXi& t() const { return t_; }
  const Eigen::VectorXd& y_factual() const { return y_factual_; }
  bool HasPotentialOutcomes() const { return y0_.has_value(); }
  // Throw kMissingPotentialOutcomes when absent.
  const Eigen::VectorXd& y0() const;
  const Eigen::VectorXd& y1() const;
  const std::optional<Eigen::VectorXd>& p_true() const { return p_true_; }
  const std::optional<NoiseRecord>& noise() const { return noise_; }

 private:
  DgpConfig config_;
  StructuralWeights weights_;
  std::map<CovariateRole, Eigen::MatrixXd> blocks_;
  Eigen::VectorXi t_;
  Eigen::VectorXd y_factual_;
  std::optional<Eigen::VectorXd> y0_;
  std::optional<Eigen::VectorXd> y1_;
  std::optional<Eigen::VectorXd> p_true_;
  std::optional<NoiseRecord> noise_;
};

LabeledDataset GenerateDataset(const DgpConfig& cfg);

// Column-concatenation of the selected (factual) blocks in combination order.
Eigen::MatrixXd Project(const LabeledDataset& ds,
                        const CovariateCombination& combo);

struct PositivityDiagnostic {
  double min_p = 0.0;
  double max_p = 0.0;
  bool ok = false;  // min_p > 0.02 and max_p < 0.98
};

// Requires p_true (kMissingPotentialOutcomes otherwise).
PositivityDiagnostic CheckPositivity(const LabeledDataset& ds);

}  // namespace causalbench

#endif  // CAUSALBENCH_SYNTHGEN_H_
