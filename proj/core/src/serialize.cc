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

#include "causalbench/serialize.h"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "causalbench/errors.h"

namespace causalbench {
namespace {

using nlohmann::json;

template <typename T>
void Get(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) it->get_to(out);
}

void CheckKeys(const json& j, std::initializer_list<const char*> keys,
               const char* what) {
  if (!j.is_object()) Fail(ErrorCode::kConfig, std::string(what) + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) {
      Fail(ErrorCode::kConfig,
           "unknown key '" + it.key() + "' in " + std::string(what));
    }
  }
}

json VecToJson(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd VecFromJson(const json& j) {
  const std::vector<double> v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json MatToJson(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(VecToJson(m.row(r)));
  return rows;
}

Eigen::MatrixXd MatFromJson(const json& j) {
  const auto rows = j.get<std::vector<std::vector<double>>>();
  if (rows.empty()) return {};
  Eigen::MatrixXd m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) Fail(ErrorCode::kSchemaMismatch, "ragged matrix");
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

json LayersToJson(const std::vector<DenseLayer>& layers) {
  json out = json::array();
  for (const DenseLayer& l : layers) {
    out.push_back({{"weight", MatToJson(l.weight)}, {"bias", VecToJson(l.bias)}});
  }
  return out;
}

std::vector<DenseLayer> LayersFromJson(const json& j) {
  std::vector<DenseLayer> out;
  for (const json& l : j) {
    out.push_back({MatFromJson(l.at("weight")), VecFromJson(l.at("bias"))});
  }
  return out;
}

std::string IpwModeName(IpwNormalization m) {
  return m == IpwNormalization::kHajek ? "hajek" : "horvitz_thompson";
}

IpwNormalization ParseIpwMode(const std::string& s) {
  if (s == "hajek") return IpwNormalization::kHajek;
  if (s == "horvitz_thompson") return IpwNormalization::kHorvitzThompson;
  Fail(ErrorCode::kConfig, "unknown IPW normalization '" + s + "'");
}

CovariateRole RoleFromJson(const json& j) {
  const std::string name = j.get<std::string>();
  const auto role = ParseRole(name);
  if (!role) Fail(ErrorCode::kUnknownRole, "unknown role '" + name + "'");
  return *role;
}

}  // namespace

void to_json(json& j, const DgpConfig& v) {
  json dims = json::object();
  for (CovariateRole r : kAllRoles) dims[std::string(RoleName(r))] = v.dim(r);
  j = {{"n", v.n},
       {"dims", dims},
       {"weight_low", v.weight_low},
       {"weight_high", v.weight_high},
       {"exo_variance", v.exo_variance},
       {"noise_scale", v.noise_scale},
       {"mix", v.mix},
       {"seed", v.seed}};
}

void from_json(const json& j, DgpConfig& v) {
  CheckKeys(j, {"n", "dims", "weight_low", "weight_high", "exo_variance",
                "noise_scale", "mix", "seed"},
            "dgp config");
  Get(j, "n", v.n);
  if (auto it = j.find("dims"); it != j.end()) {
    for (auto d = it->begin(); d != it->end(); ++d) {
      const auto role = ParseRole(d.key());
      if (!role) Fail(ErrorCode::kUnknownRole, "unknown role '" + d.key() + "'");
      v.dims[static_cast<int>(*role)] = d.value().get<int>();
    }
  }
  Get(j, "weight_low", v.weight_low);
  Get(j, "weight_high", v.weight_high);
  Get(j, "exo_variance", v.exo_variance);
  Get(j, "noise_scale", v.noise_scale);
  Get(j, "mix", v.mix);
  Get(j, "seed", v.seed);
}

void to_json(json& j, const StructuralWeights& v) {
  j = {{"C->t", VecToJson(v.c_to_t)},   {"I->t", VecToJson(v.i_to_t)},
       {"t->M", VecToJson(v.t_to_m)},   {"C->y", VecToJson(v.c_to_y)},
       {"M->y", VecToJson(v.m_to_y)},   {"A->y", VecToJson(v.a_to_y)},
       {"t->Z", VecToJson(v.t_to_z)},   {"y->Z", VecToJson(v.y_to_z)},
       {"t->TI", VecToJson(v.t_to_ti)}, {"y->YI", VecToJson(v.y_to_yi)}};
}

void from_json(const json& j, StructuralWeights& v) {
  v.c_to_t = VecFromJson(j.at("C->t"));
  v.i_to_t = VecFromJson(j.at("I->t"));
  v.t_to_m = VecFromJson(j.at("t->M"));
  v.c_to_y = VecFromJson(j.at("C->y"));
  v.m_to_y = VecFromJson(j.at("M->y"));
  v.a_to_y = VecFromJson(j.at("A->y"));
  v.t_to_z = VecFromJson(j.at("t->Z"));
  v.y_to_z = VecFromJson(j.at("y->Z"));
  v.t_to_ti = VecFromJson(j.at("t->TI"));
  v.y_to_yi = VecFromJson(j.at("y->YI"));
}

void to_json(json& j, const CovariateCombination& v) { j = v.ToString(); }

void from_json(const json& j, CovariateCombination& v) {
  if (j.is_array()) {
    std::vector<CovariateRole> roles;
    for (const json& r : j) roles.push_back(RoleFromJson(r));
    v = CovariateCombination(roles);
  } else {
    v = CovariateCombination::Parse(j.get<std::string>());
  }
}

void to_json(json& j, const PropensityOptions& v) {
  j = {{"tol", v.tol},
       {"max_iter", v.max_iter},
       {"clip_lo", v.clip_lo},
       {"clip_hi", v.clip_hi},
       {"cbps_max_iter", v.cbps_max_iter},
       {"cbps_tol_per_col", v.cbps_tol_per_col}};
}

void from_json(const json& j, PropensityOptions& v) {
  CheckKeys(j, {"tol", "max_iter", "clip_lo", "clip_hi", "cbps_max_iter",
                "cbps_tol_per_col"},
            "propensity options");
  Get(j, "tol", v.tol);
  Get(j, "max_iter", v.max_iter);
  Get(j, "clip_lo", v.clip_lo);
  Get(j, "clip_hi", v.clip_hi);
  Get(j, "cbps_max_iter", v.cbps_max_iter);
  Get(j, "cbps_tol_per_col", v.cbps_tol_per_col);
}

void to_json(json& j, const PropensityFit& v) {
  j = {{"method", v.method},
       {"coef", VecToJson(v.coef)},
       {"clip_bounds", {v.clip_lo, v.clip_hi}},
       {"n_clipped", v.n_clipped},
       {"converged", v.converged},
       {"iterations", v.iterations},
       {"ridge_jitter", v.ridge_jitter},
       {"final_residual", v.final_residual},
       {"trace", v.trace}};
}

void from_json(const json& j, PropensityFit& v) {
  Get(j, "method", v.method);
  v.coef = VecFromJson(j.at("coef"));
  if (auto it = j.find("clip_bounds"); it != j.end()) {
    v.clip_lo = it->at(0).get<double>();
    v.clip_hi = it->at(1).get<double>();
  }
  Get(j, "n_clipped", v.n_clipped);
  Get(j, "converged", v.converged);
  Get(j, "iterations", v.iterations);
  Get(j, "ridge_jitter", v.ridge_jitter);
  Get(j, "final_residual", v.final_residual);
  Get(j, "trace", v.trace);
}

void to_json(json& j, const MatchOptions& v) {
  j = {{"with_replacement", v.with_replacement},
       {"caliper", v.caliper ? json(*v.caliper) : json(nullptr)}};
}

void from_json(const json& j, MatchOptions& v) {
  CheckKeys(j, {"with_replacement", "caliper"}, "matching options");
  Get(j, "with_replacement", v.with_replacement);
  if (auto it = j.find("caliper"); it != j.end()) {
    if (it->is_null()) {
      v.caliper.reset();
    } else {
      v.caliper = it->get<double>();
    }
  }
}

void to_json(json& j, const GbmOptions& v) {
  j = {{"max_depth", v.max_depth},
       {"learning_rate", v.learning_rate},
       {"max_trees", v.max_trees},
       {"val_frac", v.val_frac},
       {"patience", v.patience},
       {"min_leaf_weight_fraction", v.min_leaf_weight_fraction},
       {"exact_threshold_rows", v.exact_threshold_rows},
       {"max_candidates", v.max_candidates},
       {"stratify_column", v.stratify_column},
       {"seed", v.seed}};
}

void from_json(const json& j, GbmOptions& v) {
  CheckKeys(j, {"max_depth", "learning_rate", "max_trees", "val_frac", "patience",
                "min_leaf_weight_fraction", "exact_threshold_rows",
                "max_candidates", "stratify_column", "seed"},
            "gbm options");
  Get(j, "max_depth", v.max_depth);
  Get(j, "learning_rate", v.learning_rate);
  Get(j, "max_trees", v.max_trees);
  Get(j, "val_frac", v.val_frac);
  Get(j, "patience", v.patience);
  Get(j, "min_leaf_weight_fraction", v.min_leaf_weight_fraction);
  Get(j, "exact_threshold_rows", v.exact_threshold_rows);
  Get(j, "max_candidates", v.max_candidates);
  Get(j, "stratify_column", v.stratify_column);
  Get(j, "seed", v.seed);
}

void to_json(json& j, const BoostedModel& v) {
  json trees = json::array();
  for (const Tree& t : v.trees) {
    json nodes = json::array();
    for (const TreeNode& n : t.nodes) {
      if (n.feature < 0) {
        nodes.push_back({{"value", n.value}});
      } else {
        nodes.push_back({{"feature", n.feature},
                         {"threshold", n.threshold},
                         {"left", n.left},
                         {"right", n.right},
                         {"value", n.value}});
      }
    }
    trees.push_back(nodes);
  }
  j = {{"init", v.init},
       {"learning_rate", v.learning_rate},
       {"best_iter", v.best_iter},
       {"num_features", v.num_features},
       {"treatment_column", v.treatment_column},
       {"degenerate_target", v.degenerate_target},
       {"train_loss", v.train_loss},
       {"validation_loss", v.validation_loss},
       {"trees", trees}};
}

void from_json(const json& j, BoostedModel& v) {
  v.init = j.at("init").get<double>();
  v.learning_rate = j.at("learning_rate").get<double>();
  v.best_iter = j.at("best_iter").get<int>();
  v.num_features = j.at("num_features").get<int>();
  Get(j, "treatment_column", v.treatment_column);
  Get(j, "degenerate_target", v.degenerate_target);
  Get(j, "train_loss", v.train_loss);
  Get(j, "validation_loss", v.validation_loss);
  v.trees.clear();
  for (const json& t : j.at("trees")) {
    Tree tree;
    for (const json& n : t) {
      TreeNode node;
      node.value = n.at("value").get<double>();
      if (n.contains("feature")) {
        node.feature = n.at("feature").get<int>();
        node.threshold = n.at("threshold").get<double>();
        node.left = n.at("left").get<int>();
        node.right = n.at("right").get<int>();
      }
      tree.nodes.push_back(node);
    }
    v.trees.push_back(std::move(tree));
  }
}

void to_json(json& j, const CfrOptions& v) {
  j = {{"alpha", v.alpha},
       {"epochs", v.epochs},
       {"batch_size", v.batch_size},
       {"step_size", v.step_size},
       {"seed", v.seed},
       {"rep_layers", v.rep_layers},
       {"head_layers", v.head_layers},
       {"activation", ActivationName(v.activation)},
       {"zero_init_heads", v.zero_init_heads},
       {"standardize_inputs", v.standardize_inputs}};
}

void from_json(const json& j, CfrOptions& v) {
  CheckKeys(j, {"alpha", "epochs", "batch_size", "step_size", "seed",
                "rep_layers", "head_layers", "activation", "zero_init_heads",
                "standardize_inputs"},
            "cfr options");
  Get(j, "alpha", v.alpha);
  Get(j, "epochs", v.epochs);
  Get(j, "batch_size", v.batch_size);
  Get(j, "step_size", v.step_size);
  Get(j, "seed", v.seed);
  Get(j, "rep_layers", v.rep_layers);
  Get(j, "head_layers", v.head_layers);
  if (auto it = j.find("activation"); it != j.end()) {
    v.activation = ParseActivation(it->get<std::string>());
  }
  Get(j, "zero_init_heads", v.zero_init_heads);
  Get(j, "standardize_inputs", v.standardize_inputs);
}

void to_json(json& j, const RepNet& v) {
  j = {{"activation", ActivationName(v.activation)},
       {"input_mean", VecToJson(v.input_mean)},
       {"input_scale", VecToJson(v.input_scale)},
       {"rep", LayersToJson(v.rep)},
       {"head0", LayersToJson(v.head0)},
       {"head1", LayersToJson(v.head1)}};
}

void from_json(const json& j, RepNet& v) {
  v.activation = ParseActivation(j.at("activation").get<std::string>());
  v.input_mean = VecFromJson(j.at("input_mean"));
  v.input_scale = VecFromJson(j.at("input_scale"));
  v.rep = LayersFromJson(j.at("rep"));
  v.head0 = LayersFromJson(j.at("head0"));
  v.head1 = LayersFromJson(j.at("head1"));
}

void to_json(json& j, const TrainTrace& v) {
  j = {{"factual", v.factual}, {"imbalance", v.imbalance}, {"total", v.total}};
}

void to_json(json& j, const EstimatorOptions& v) {
  json exclude = json::array();
  for (CovariateRole r : v.propensity_exclude) exclude.push_back(std::string(RoleName(r)));
  j = {{"propensity", v.propensity},
       {"strata", v.strata},
       {"matching", v.matching},
       {"ipw_normalization", IpwModeName(v.ipw_mode)},
       {"gbm", v.gbm},
       {"cfr", v.cfr},
       {"propensity_exclude", exclude}};
}

void from_json(const json& j, EstimatorOptions& v) {
  CheckKeys(j, {"propensity", "strata", "matching", "ipw_normalization", "gbm",
                "cfr", "propensity_exclude"},
            "estimator options");
  Get(j, "propensity", v.propensity);
  Get(j, "strata", v.strata);
  Get(j, "matching", v.matching);
  if (auto it = j.find("ipw_normalization"); it != j.end()) {
    v.ipw_mode = ParseIpwMode(it->get<std::string>());
  }
  Get(j, "gbm", v.gbm);
  Get(j, "cfr", v.cfr);
  if (auto it = j.find("propensity_exclude"); it != j.end()) {
    v.propensity_exclude.clear();
    for (const json& r : *it) v.propensity_exclude.push_back(RoleFromJson(r));
  }
}

void to_json(json& j, const SweepConfig& v) {
  json estimators = json::array();
  for (EstimatorKind e : v.estimators) estimators.push_back(EstimatorName(e));
  j = {{"dgp", v.dgp},         {"combos", v.combos},   {"estimators", estimators},
       {"seeds", v.seeds},     {"options", v.options}, {"threads", v.threads}};
}

void from_json(const json& j, SweepConfig& v) {
  CheckKeys(j, {"dgp", "combos", "estimators", "seeds", "options", "threads"},
            "sweep config");
  Get(j, "dgp", v.dgp);
  Get(j, "combos", v.combos);
  if (auto it = j.find("estimators"); it != j.end()) {
    v.estimators.clear();
    for (const json& e : *it) v.estimators.push_back(ParseEstimator(e.get<std::string>()));
  }
  Get(j, "seeds", v.seeds);
  Get(j, "options", v.options);
  Get(j, "threads", v.threads);
}

void to_json(json& j, const CellResult& v) {
  j = {{"estimator", EstimatorName(v.estimator)},
       {"combo", v.combo},
       {"seed", v.seed},
       {"ok", v.ok}};
  if (!v.ok) {
    j["error_code"] = v.error_code;
    j["error_message"] = v.error_message;
    return;
  }
  j["ate_true"] = v.ate_true;
  j["ate_hat"] = v.ate_hat;
  j["pehe"] = v.pehe;
  j["root_pehe"] = v.root_pehe;
  j["eps_ate"] = v.eps_ate;
  j["diagnostics"] = {{"n_clipped", v.n_clipped},
                      {"propensity_converged", v.propensity_converged},
                      {"strata_used", v.strata_used},
                      {"retained_fraction", v.retained_fraction},
                      {"max_abs_smd", v.max_abs_smd},
                      {"gbm_trees", v.gbm_trees}};
}

void from_json(const json& j, CellResult& v) {
  v.estimator = ParseEstimator(j.at("estimator").get<std::string>());
  v.combo = j.at("combo").get<CovariateCombination>();
  v.seed = j.at("seed").get<std::uint64_t>();
  v.ok = j.at("ok").get<bool>();
  Get(j, "error_code", v.error_code);
  Get(j, "error_message", v.error_message);
  Get(j, "ate_true", v.ate_true);
  Get(j, "ate_hat", v.ate_hat);
  Get(j, "pehe", v.pehe);
  Get(j, "root_pehe", v.root_pehe);
  Get(j, "eps_ate", v.eps_ate);
  if (auto it = j.find("diagnostics"); it != j.end()) {
    Get(*it, "n_clipped", v.n_clipped);
    Get(*it, "propensity_converged", v.propensity_converged);
    Get(*it, "strata_used", v.strata_used);
    Get(*it, "retained_fraction", v.retained_fraction);
    Get(*it, "max_abs_smd", v.max_abs_smd);
    Get(*it, "gbm_trees", v.gbm_trees);
  }
}

void to_json(json& j, const CellSummary& v) {
  j = {{"estimator", EstimatorName(v.estimator)},
       {"combo", v.combo},
       {"n_ok", v.n_ok},
       {"n_failed", v.n_failed},
       {"median_pehe", v.median_pehe},
       {"median_root_pehe", v.median_root_pehe},
       {"median_eps_ate", v.median_eps_ate},
       {"sd_pehe", v.sd_pehe},
       {"sd_eps_ate", v.sd_eps_ate}};
}

void from_json(const json& j, CellSummary& v) {
  v.estimator = ParseEstimator(j.at("estimator").get<std::string>());
  v.combo = j.at("combo").get<CovariateCombination>();
  Get(j, "n_ok", v.n_ok);
  Get(j, "n_failed", v.n_failed);
  Get(j, "median_pehe", v.median_pehe);
  Get(j, "median_root_pehe", v.median_root_pehe);
  Get(j, "median_eps_ate", v.median_eps_ate);
  Get(j, "sd_pehe", v.sd_pehe);
  Get(j, "sd_eps_ate", v.sd_eps_ate);
}

void to_json(json& j, const SweepReport& v) {
  j = {{"tool_version", v.tool_version},
       {"config_hash", v.config_hash},
       {"timestamp", v.timestamp},
       {"config", v.config},
       {"cells", v.cells},
       {"summary", v.summaries}};
}

void from_json(const json& j, SweepReport& v) {
  Get(j, "tool_version", v.tool_version);
  Get(j, "config_hash", v.config_hash);
  Get(j, "timestamp", v.timestamp);
  v.config = j.at("config").get<SweepConfig>();
  v.cells = j.at("cells").get<std::vector<CellResult>>();
  v.summaries = j.at("summary").get<std::vector<CellSummary>>();
}

void to_json(json& j, const TheoryGridConfig& v) {
  json kinds = json::array();
  for (NcKind k : v.equivalence_kinds) kinds.push_back(NcKindName(k));
  j = {{"n", v.n},
       {"replications", v.replications},
       {"strata", v.strata},
       {"seed", v.seed},
       {"gammas", v.gammas},
       {"taus", v.taus},
       {"betas", v.betas},
       {"lower_bound_configs", v.lower_bound_configs},
       {"lower_bound_pass_fraction", v.lower_bound_pass_fraction},
       {"equivalence_kinds", kinds}};
}

void from_json(const json& j, TheoryGridConfig& v) {
  CheckKeys(j, {"n", "replications", "strata", "seed", "gammas", "taus", "betas",
                "lower_bound_configs", "lower_bound_pass_fraction",
                "equivalence_kinds"},
            "theory grid");
  Get(j, "n", v.n);
  Get(j, "replications", v.replications);
  Get(j, "strata", v.strata);
  Get(j, "seed", v.seed);
  Get(j, "gammas", v.gammas);
  Get(j, "taus", v.taus);
  Get(j, "betas", v.betas);
  Get(j, "lower_bound_configs", v.lower_bound_configs);
  Get(j, "lower_bound_pass_fraction", v.lower_bound_pass_fraction);
  if (auto it = j.find("equivalence_kinds"); it != j.end()) {
    v.equivalence_kinds.clear();
    for (const json& k : *it) v.equivalence_kinds.push_back(ParseNcKind(k.get<std::string>()));
  }
}

void to_json(json& j, const McStat& v) { j = {{"mean", v.mean}, {"se", v.se}}; }

void to_json(json& j, const EquivalenceVerdict& v) {
  j = {{"kind", NcKindName(v.kind)},
       {"delta", v.delta},
       {"delta_nc", v.delta_nc},
       {"difference", v.difference},
       {"verdict", v.equivalent ? "equivalent" : "non-equivalent"}};
}

void to_json(json& j, const TheoryReport& v) {
  json inv = json::array();
  for (const InvariantResult& r : v.invariants) {
    inv.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  j = {{"invariants", inv},
       {"equivalence", v.verdicts},
       {"lower_bound", {{"holds", v.lower_bound_holds}, {"total", v.lower_bound_total}}},
       {"all_pass", v.AllPass()}};
}

json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kConfig, "invalid JSON in " + path.string() + ": " + e.what());
  }
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) Fail(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace causalbench
