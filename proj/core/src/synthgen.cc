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

#include "causalbench/synthgen.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "causalbench/errors.h"
#include "causalbench/numeric.h"
#include "causalbench/random.h"

namespace causalbench {
namespace {

constexpr std::array<std::string_view, 7> kRoleNames = {"I", "C",  "A", "M",
                                                         "Z", "TI", "YI"};

Eigen::VectorXd UniformVector(const DgpConfig& cfg, std::string_view stream,
                              int size) {
  Rng rng = Rng::ForStream(cfg.seed, stream);
  Eigen::VectorXd v(size);
  rng.FillUniform({v.data(), static_cast<std::size_t>(size)}, cfg.weight_low,
                  cfg.weight_high);
  return v;
}

Eigen::MatrixXd StandardNormalMatrix(std::uint64_t seed,
                                     std::string_view stream, std::int64_t rows,
                                     int cols) {
  Rng rng = Rng::ForStream(seed, stream);
  Eigen::MatrixXd m(rows, cols);
  rng.FillNormal({m.data(), static_cast<std::size_t>(m.size())}, 0.0, 1.0);
  return m;
}

// Row-wise sigmoid of the dot product block.row(i) . w.
Eigen::VectorXd SigmoidOfProjection(const Eigen::MatrixXd& block,
                                    const Eigen::VectorXd& w) {
  const Eigen::VectorXd lin = block * w;
  return lin.unaryExpr([](double x) { return Sigmoid(x); });
}

// Column k = sigmoid(driver * w[k]).
Eigen::MatrixXd SigmoidOfScaled(const Eigen::VectorXd& driver,
                                const Eigen::VectorXd& w) {
  Eigen::MatrixXd out(driver.size(), w.size());
  for (int k = 0; k < w.size(); ++k) {
    out.col(k) = (driver * w[k]).unaryExpr([](double x) { return Sigmoid(x); });
  }
  return out;
}

}  // namespace

std::string_view RoleName(CovariateRole role) {
  return kRoleNames[static_cast<int>(role)];
}

std::optional<CovariateRole> ParseRole(std::string_view name) {
  for (std::size_t i = 0; i < kRoleNames.size(); ++i) {
    if (kRoleNames[i] == name) return kAllRoles[i];
  }
  return std::nullopt;
}

CovariateCombination::CovariateCombination(std::vector<CovariateRole> roles)
    : roles_(std::move(roles)) {
  std::set<CovariateRole> seen;
  for (CovariateRole r : roles_) {
    if (!seen.insert(r).second) {
      Fail(ErrorCode::kConfig,
           "duplicate role " + std::string(RoleName(r)) + " in combination");
    }
  }
}

CovariateCombination CovariateCombination::Parse(std::string_view text) {
  std::vector<CovariateRole> roles;
  std::string token;
  std::stringstream ss{std::string(text)};
  while (std::getline(ss, token, ',')) {
    token.erase(std::remove_if(token.begin(), token.end(),
                               [](unsigned char c) {
                                 return std::isspace(c) || c == '{' || c == '}';
                               }),
                token.end());
    if (token.empty()) continue;
    auto role = ParseRole(token);
    if (!role) Fail(ErrorCode::kUnknownRole, "unknown role '" + token + "'");
    roles.push_back(*role);
  }
  return CovariateCombination(std::move(roles));
}

bool CovariateCombination::Contains(CovariateRole role) const {
  return std::find(roles_.begin(), roles_.end(), role) != roles_.end();
}

std::string CovariateCombination::ToString() const {
  std::string out;
  for (std::size_t i = 0; i < roles_.size(); ++i) {
    if (i > 0) out += ",";
    out += RoleName(roles_[i]);
  }
  return out;
}

std::string CovariateCombination::Label() const {
  return "{" + ToString() + "}";
}

void DgpConfig::Validate() const {
  if (n <= 0) Fail(ErrorCode::kConfig, "n must be positive");
  for (int d : dims) {
    if (d < 1) Fail(ErrorCode::kConfig, "all block dims must be >= 1");
  }
  if (!(weight_low > 0.0) || !(weight_low <= weight_high)) {
    Fail(ErrorCode::kConfig, "require 0 < weight_low <= weight_high");
  }
  if (!(exo_variance >= 0.0) || !std::isfinite(exo_variance)) {
    Fail(ErrorCode::kConfig, "exo_variance must be finite and >= 0");
  }
  if (!(noise_scale >= 0.0) || !std::isfinite(noise_scale)) {
    Fail(ErrorCode::kConfig, "noise_scale must be finite and >= 0");
  }
  double total = 0.0;
  for (double m : mix) {
    if (!(m >= 0.0)) Fail(ErrorCode::kConfig, "mix weights must be >= 0");
    total += m;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    Fail(ErrorCode::kConfig, "mix weights must sum to 1");
  }
}

StructuralWeights DrawWeights(const DgpConfig& cfg) {
  using R = CovariateRole;
  StructuralWeights w;
  w.c_to_t = UniformVector(cfg, "weights/C->t", cfg.dim(R::kConfounder));
  w.i_to_t = UniformVector(cfg, "weights/I->t", cfg.dim(R::kInstrument));
  w.t_to_m = UniformVector(cfg, "weights/t->M", cfg.dim(R::kMediator));
  w.c_to_y = UniformVector(cfg, "weights/C->y", cfg.dim(R::kConfounder));
  w.m_to_y = UniformVector(cfg, "weights/M->y", cfg.dim(R::kMediator));
  w.a_to_y = UniformVector(cfg, "weights/A->y", cfg.dim(R::kAdjustment));
  w.t_to_z = UniformVector(cfg, "weights/t->Z", cfg.dim(R::kCollider));
  w.y_to_z = UniformVector(cfg, "weights/y->Z", cfg.dim(R::kCollider));
  w.t_to_ti =
      UniformVector(cfg, "weights/t->TI", cfg.dim(R::kTreatmentInfluenced));
  w.y_to_yi =
      UniformVector(cfg, "weights/y->YI", cfg.dim(R::kOutcomeInfluenced));
  return w;
}

ExogenousBlocks SampleExogenous(const DgpConfig& cfg) {
  using R = CovariateRole;
  const double sd = std::sqrt(cfg.exo_variance);
  ExogenousBlocks b;
  b.instrument =
      sd * StandardNormalMatrix(cfg.seed, "exo/I", cfg.n, cfg.dim(R::kInstrument));
  b.confounder =
      sd * StandardNormalMatrix(cfg.seed, "exo/C", cfg.n, cfg.dim(R::kConfounder));
  b.adjustment =
      sd * StandardNormalMatrix(cfg.seed, "exo/A", cfg.n, cfg.dim(R::kAdjustment));
  return b;
}

TreatmentDraw AssignTreatment(const Eigen::MatrixXd& instrument,
                              const Eigen::MatrixXd& confounder,
                              const StructuralWeights& weights,
                              const DgpConfig& cfg) {
  const std::int64_t n = confounder.rows();
  TreatmentDraw draw;
  draw.eps_t = StandardNormalMatrix(cfg.seed, "noise/eps_t", n, 1).col(0);
  const Eigen::VectorXd from_c = SigmoidOfProjection(confounder, weights.c_to_t);
  const Eigen::VectorXd from_i = SigmoidOfProjection(instrument, weights.i_to_t);
  draw.p_true.resize(n);
  draw.t.resize(n);
  Rng coin = Rng::ForStream(cfg.seed, "draw/t");
  for (std::int64_t i = 0; i < n; ++i) {
    draw.p_true[i] = cfg.mix[0] * from_c[i] + cfg.mix[1] * from_i[i] +
                     cfg.mix[2] * Sigmoid(draw.eps_t[i]);
    draw.t[i] = coin.Bernoulli(draw.p_true[i]) ? 1 : 0;
  }
  return draw;
}

NoiseRecord DrawNoise(const DgpConfig& cfg) {
  using R = CovariateRole;
  NoiseRecord noise;
  noise.eps_t = StandardNormalMatrix(cfg.seed, "noise/eps_t", cfg.n, 1).col(0);
  noise.eps_m =
      StandardNormalMatrix(cfg.seed, "noise/eps_M", cfg.n, cfg.dim(R::kMediator));
  noise.eps_y = StandardNormalMatrix(cfg.seed, "noise/eps_y", cfg.n, 1).col(0);
  noise.eps_z =
      StandardNormalMatrix(cfg.seed, "noise/eps_Z", cfg.n, cfg.dim(R::kCollider));
  noise.eps_ti = StandardNormalMatrix(cfg.seed, "noise/eps_TI", cfg.n,
                                      cfg.dim(R::kTreatmentInfluenced));
  noise.eps_yi = StandardNormalMatrix(cfg.seed, "noise/eps_YI", cfg.n,
                                      cfg.dim(R::kOutcomeInfluenced));
  return noise;
}

NonRootValues GenerateNonRoot(const Eigen::VectorXd& t,
                              const Eigen::MatrixXd& confounder,
                              const Eigen::MatrixXd& adjustment,
                              const StructuralWeights& weights,
                              const NoiseRecord& noise, double noise_scale) {
  NonRootValues v;
  v.mediator = SigmoidOfScaled(t, weights.t_to_m) + noise_scale * noise.eps_m;
  v.y = SigmoidOfProjection(confounder, weights.c_to_y) +
        SigmoidOfProjection(v.mediator, weights.m_to_y) +
        SigmoidOfProjection(adjustment, weights.a_to_y) +
        noise_scale * noise.eps_y;
  v.collider = SigmoidOfScaled(t, weights.t_to_z) +
               SigmoidOfScaled(v.y, weights.y_to_z) + noise_scale * noise.eps_z;
  v.treatment_influenced =
      SigmoidOfScaled(t, weights.t_to_ti) + noise_scale * noise.eps_ti;
  v.outcome_influenced =
      SigmoidOfScaled(v.y, weights.y_to_yi) + noise_scale * noise.eps_yi;
  return v;
}

LabeledDataset::LabeledDataset(DgpConfig config, StructuralWeights weights,
                               std::map<CovariateRole, Eigen::MatrixXd> blocks,
                               Eigen::VectorXi t, Eigen::VectorXd y_factual,
                               std::optional<Eigen::VectorXd> y0,
                               std::optional<Eigen::VectorXd> y1,
                               std::optional<Eigen::VectorXd> p_true,
                               std::optional<NoiseRecord> noise)
    : config_(std::move(config)),
      weights_(std::move(weights)),
      blocks_(std::move(blocks)),
      t_(std::move(t)),
      y_factual_(std::move(y_factual)),
      y0_(std::move(y0)),
      y1_(std::move(y1)),
      p_true_(std::move(p_true)),
      noise_(std::move(noise)) {
  const std::int64_t n = t_.size();
  if (y_factual_.size() != n) {
    Fail(ErrorCode::kLengthMismatch, "y_f length differs from t");
  }
  if (y0_.has_value() != y1_.has_value()) {
    Fail(ErrorCode::kMissingPotentialOutcomes, "y0 and y1 must come together");
  }
  if (y0_ && (y0_->size() != n || y1_->size() != n)) {
    Fail(ErrorCode::kLengthMismatch, "potential outcome length differs from t");
  }
  for (const auto& [role, m] : blocks_) {
    if (m.rows() != n) {
      Fail(ErrorCode::kLengthMismatch,
           "block " + std::string(RoleName(role)) + " has wrong row count");
    }
  }
  for (std::int64_t i = 0; i < n; ++i) {
    if (t_[i] != 0 && t_[i] != 1) {
      Fail(ErrorCode::kConfig, "treatment must be binary");
    }
  }
}

const Eigen::MatrixXd& LabeledDataset::block(CovariateRole role) const {
  auto it = blocks_.find(role);
  if (it == blocks_.end()) {
    Fail(ErrorCode::kUnknownRole,
         "dataset has no block for role " + std::string(RoleName(role)));
  }
  return it->second;
}

const Eigen::VectorXd& LabeledDataset::y0() const {
  if (!y0_) Fail(ErrorCode::kMissingPotentialOutcomes, "dataset lacks y0");
  return *y0_;
}

const Eigen::VectorXd& LabeledDataset::y1() const {
  if (!y1_) Fail(ErrorCode::kMissingPotentialOutcomes, "dataset lacks y1");
  return *y1_;
}

LabeledDataset GenerateDataset(const DgpConfig& cfg) {
  cfg.Validate();
  StructuralWeights weights = DrawWeights(cfg);
  ExogenousBlocks exo = SampleExogenous(cfg);
  TreatmentDraw treat =
      AssignTreatment(exo.instrument, exo.confounder, weights, cfg);
  NoiseRecord noise = DrawNoise(cfg);

  const Eigen::VectorXd t_real = treat.t.cast<double>();
  NonRootValues factual = GenerateNonRoot(t_real, exo.confounder,
                                          exo.adjustment, weights, noise,
                                          cfg.noise_scale);
  const Eigen::VectorXd zeros = Eigen::VectorXd::Zero(cfg.n);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(cfg.n);
  NonRootValues arm0 = GenerateNonRoot(zeros, exo.confounder, exo.adjustment,
                                       weights, noise, cfg.noise_scale);
  NonRootValues arm1 = GenerateNonRoot(ones, exo.confounder, exo.adjustment,
                                       weights, noise, cfg.noise_scale);

  using R = CovariateRole;
  std::map<CovariateRole, Eigen::MatrixXd> blocks;
  blocks[R::kInstrument] = std::move(exo.instrument);
  blocks[R::kConfounder] = std::move(exo.confounder);
  blocks[R::kAdjustment] = std::move(exo.adjustment);
  blocks[R::kMediator] = std::move(factual.mediator);
  blocks[R::kCollider] = std::move(factual.collider);
  blocks[R::kTreatmentInfluenced] = std::move(factual.treatment_influenced);
  blocks[R::kOutcomeInfluenced] = std::move(factual.outcome_influenced);

  return LabeledDataset(cfg, std::move(weights), std::move(blocks),
                        std::move(treat.t), std::move(factual.y),
                        std::move(arm0.y), std::move(arm1.y),
                        std::move(treat.p_true), std::move(noise));
}

Eigen::MatrixXd Project(const LabeledDataset& ds,
                        const CovariateCombination& combo) {
  Eigen::Index cols = 0;
  for (CovariateRole r : combo.roles()) cols += ds.block(r).cols();
  Eigen::MatrixXd x(ds.size(), cols);
  Eigen::Index at = 0;
  for (CovariateRole r : combo.roles()) {
    const Eigen::MatrixXd& b = ds.block(r);
    x.middleCols(at, b.cols()) = b;
    at += b.cols();
  }
  return x;
}

PositivityDiagnostic CheckPositivity(const LabeledDataset& ds) {
  if (!ds.p_true()) {
    Fail(ErrorCode::kMissingPotentialOutcomes,
         "dataset carries no true propensities");
  }
  PositivityDiagnostic d;
  d.min_p = ds.p_true()->minCoeff();
  d.max_p = ds.p_true()->maxCoeff();
  d.ok = d.min_p > 0.02 && d.max_p < 0.98;
  return d;
}

}  // namespace causalbench
