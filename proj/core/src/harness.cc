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

#include "causalbench/harness.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <set>
#include <sstream>
#include <thread>

#include "causalbench/errors.h"
#include "causalbench/metrics.h"
#include "causalbench/numeric.h"
#include "causalbench/random.h"
#include "causalbench/serialize.h"

namespace causalbench {
namespace {

Eigen::MatrixXd PropensityDesign(const LabeledDataset& ds,
                                 const CovariateCombination& combo,
                                 const std::vector<CovariateRole>& exclude) {
  std::vector<CovariateRole> kept;
  for (CovariateRole r : combo.roles()) {
    if (std::find(exclude.begin(), exclude.end(), r) == exclude.end()) {
      kept.push_back(r);
    }
  }
  if (kept.empty()) return Eigen::MatrixXd(ds.size(), 0);
  return Project(ds, CovariateCombination(kept));
}

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Estimate {
  double ate = 0.0;
  Eigen::VectorXd ite;
};

Estimate RunTwoStep(const LabeledDataset& ds, const CovariateCombination& combo,
                    EstimatorKind estimator, const EstimatorOptions& opts,
                    std::uint64_t cell_seed, CellResult& cell) {
  const Eigen::VectorXi& t = ds.t();
  const Eigen::VectorXd& y = ds.y_factual();
  const Eigen::MatrixXd xp = PropensityDesign(ds, combo, opts.propensity_exclude);
  const PropensityFit fit = estimator == EstimatorKind::kCbps
                                ? FitCbps(xp, t, opts.propensity)
                                : FitLogistic(xp, t, opts.propensity);
  cell.n_clipped = fit.n_clipped;
  cell.propensity_converged = fit.converged;

  const Eigen::MatrixXd x = Project(ds, combo);
  const Eigen::MatrixXd xt = AppendTreatment(x, t);
  GbmOptions gbm = opts.gbm;
  gbm.seed = cell_seed;

  Estimate est;
  switch (estimator) {
    case EstimatorKind::kPss: {
      const Stratification strat = Stratify(fit.scores, t, opts.strata);
      cell.strata_used = strat.size();
      est.ate = AteStratified(y, t, strat);
      est.ite = Eigen::VectorXd::Zero(ds.size());
      for (int j = 0; j < strat.size(); ++j) {
        std::vector<int> rows;
        for (std::size_t i = 0; i < strat.assignment.size(); ++i) {
          if (strat.assignment[i] == j) rows.push_back(static_cast<int>(i));
        }
        GbmOptions g = gbm;
        g.seed = SplitMix64(cell_seed + static_cast<std::uint64_t>(j));
        const Eigen::MatrixXd xj = xt(rows, Eigen::all);
        const BoostedModel model =
            FitGbm(xj, y(rows), Eigen::VectorXd::Ones(rows.size()), g);
        cell.gbm_trees += model.best_iter;
        est.ite(rows) = PredictIte(model, x(rows, Eigen::all));
      }
      break;
    }
    case EstimatorKind::kPsm: {
      const MatchSet ms = Match1Nn(fit.scores, t, opts.matching);
      cell.retained_fraction = ms.retained_fraction();
      est.ate = AteMatched(y, t, ms);
      const BoostedModel model = FitGbm(xt, y, ms.MatchedWeights(), gbm);
      cell.gbm_trees = model.best_iter;
      est.ite = PredictIte(model, x);
      break;
    }
    case EstimatorKind::kIpw:
    case EstimatorKind::kCbps: {
      const WeightVector w = IpwWeights(fit.scores, t);
      if (xp.cols() > 0) cell.max_abs_smd = BalanceReport(xp, t, w.raw).max_abs_smd;
      est.ate = AteIpw(y, t, w, opts.ipw_mode);
      const BoostedModel model = FitGbm(xt, y, w.raw, gbm);
      cell.gbm_trees = model.best_iter;
      est.ite = PredictIte(model, x);
      break;
    }
    case EstimatorKind::kCfr:
      Fail(ErrorCode::kConfig, "CFR is not a two-step estimator");
  }
  return est;
}

}  // namespace

std::string EstimatorName(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::kPss: return "PSS";
    case EstimatorKind::kPsm: return "PSM";
    case EstimatorKind::kIpw: return "IPW";
    case EstimatorKind::kCbps: return "CBPS";
    case EstimatorKind::kCfr: return "CFR";
  }
  return "?";
}

EstimatorKind ParseEstimator(const std::string& name) {
  std::string upper = name;
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (EstimatorKind k : kAllEstimators) {
    if (EstimatorName(k) == upper) return k;
  }
  Fail(ErrorCode::kConfig, "unknown estimator '" + name + "'");
}

std::vector<CovariateCombination> DefaultCombos() {
  std::vector<CovariateCombination> out;
  for (const char* c : {"C", "C,I", "C,A", "C,YI", "C,M", "C,TI", "C,Z"}) {
    out.push_back(CovariateCombination::Parse(c));
  }
  return out;
}

void SweepConfig::Validate() const {
  dgp.Validate();
  if (combos.empty()) Fail(ErrorCode::kConfig, "sweep needs at least one combo");
  for (const CovariateCombination& c : combos) {
    if (!c.Contains(CovariateRole::kConfounder)) {
      Fail(ErrorCode::kConfig, "combo " + c.Label() + " lacks C");
    }
  }
  for (std::size_t a = 0; a < combos.size(); ++a) {
    for (std::size_t b = a + 1; b < combos.size(); ++b) {
      if (combos[a] == combos[b]) {
        Fail(ErrorCode::kConfig, "duplicate combo " + combos[a].Label());
      }
    }
  }
  if (seeds.empty()) Fail(ErrorCode::kConfig, "sweep needs at least one seed");
  if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    Fail(ErrorCode::kConfig, "duplicate seeds");
  }
  if (std::set<EstimatorKind>(estimators.begin(), estimators.end()).size() !=
      estimators.size()) {
    Fail(ErrorCode::kConfig, "duplicate estimators");
  }
  if (threads < 1) Fail(ErrorCode::kConfig, "threads must be >= 1");
  if (options.strata < 1) Fail(ErrorCode::kConfig, "strata must be >= 1");
}

const CellSummary* SweepReport::Find(EstimatorKind e,
                                     const CovariateCombination& c) const {
  for (const CellSummary& s : summaries) {
    if (s.estimator == e && s.combo == c) return &s;
  }
  return nullptr;
}

std::uint64_t CellSeed(std::uint64_t seed, const CovariateCombination& combo,
                       EstimatorKind estimator) {
  return SplitMix64(seed ^ Fnv1a64(combo.ToString() + "/" + EstimatorName(estimator)));
}

CellResult RunCell(const LabeledDataset& ds, const CovariateCombination& combo,
                   EstimatorKind estimator, const EstimatorOptions& opts) {
  CellResult cell;
  cell.estimator = estimator;
  cell.combo = combo;
  cell.seed = ds.config().seed;
  const std::uint64_t cell_seed = CellSeed(cell.seed, combo, estimator);
  try {
    const TrueEffects truth = ComputeTrueEffects(ds);
    cell.ate_true = truth.ate;
    Estimate est;
    if (estimator == EstimatorKind::kCfr) {
      CfrOptions cfr = opts.cfr;
      cfr.seed = cell_seed;
      const Eigen::MatrixXd x = Project(ds, combo);
      const CfrFit fit = FitCfr(x, ds.t(), ds.y_factual(), cfr);
      const PotentialOutcomes po = PredictPotentialOutcomes(fit.net, x);
      est.ite = po.y1 - po.y0;
      est.ate = StableMean(AsSpan(est.ite));
    } else {
      est = RunTwoStep(ds, combo, estimator, opts, cell_seed, cell);
    }
    cell.ate_hat = est.ate;
    cell.pehe = Pehe(truth.ite, est.ite);
    cell.root_pehe = std::sqrt(cell.pehe);
    cell.eps_ate = EpsAte(truth.ate, est.ate);
    if (!std::isfinite(cell.pehe) || !std::isfinite(cell.eps_ate)) {
      Fail(ErrorCode::kNonFinite, "non-finite metric");
    }
    cell.ok = true;
  } catch (const Error& e) {
    cell.ok = false;
    cell.error_code = std::string(ErrorCodeName(e.code()));
    cell.error_message = e.what();
  } catch (const std::exception& e) {
    cell.ok = false;
    cell.error_code = "InternalError";
    cell.error_message = e.what();
  }
  return cell;
}

std::vector<CellSummary> Summarize(const SweepConfig& cfg,
                                   const std::vector<CellResult>& cells) {
  std::vector<CellSummary> out;
  for (const CovariateCombination& combo : cfg.combos) {
    for (EstimatorKind e : cfg.estimators) {
      CellSummary s;
      s.estimator = e;
      s.combo = combo;
      std::vector<double> pehe, root, ate;
      for (const CellResult& c : cells) {
        if (c.estimator != e || !(c.combo == combo)) continue;
        if (!c.ok) {
          ++s.n_failed;
          continue;
        }
        pehe.push_back(c.pehe);
        root.push_back(c.root_pehe);
        ate.push_back(c.eps_ate);
      }
      s.n_ok = static_cast<int>(pehe.size());
      if (s.n_ok > 0) {
        s.median_pehe = Median(pehe);
        s.median_root_pehe = Median(root);
        s.median_eps_ate = Median(ate);
      }
      if (s.n_ok > 1) {
        s.sd_pehe = SampleStdDev(pehe);
        s.sd_eps_ate = SampleStdDev(ate);
      }
      out.push_back(s);
    }
  }
  return out;
}

std::string ConfigHash(const SweepConfig& cfg) {
  nlohmann::json j = cfg;
  j.erase("threads");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(Fnv1a64(j.dump())));
  return buf;
}

SweepReport RunSweep(const SweepConfig& cfg) {
  cfg.Validate();
  SweepReport report;
  report.tool_version = CAUSALBENCH_VERSION;
  report.config_hash = ConfigHash(cfg);
  report.timestamp = UtcTimestamp();
  report.config = cfg;

  std::vector<LabeledDataset> datasets;
  datasets.reserve(cfg.seeds.size());
  for (std::uint64_t seed : cfg.seeds) {
    DgpConfig dgp = cfg.dgp;
    dgp.seed = seed;
    datasets.push_back(GenerateDataset(dgp));
  }

  struct Job {
    int dataset;
    int combo;
    EstimatorKind estimator;
  };
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < cfg.seeds.size(); ++s) {
    for (std::size_t c = 0; c < cfg.combos.size(); ++c) {
      for (EstimatorKind e : cfg.estimators) {
        jobs.push_back({static_cast<int>(s), static_cast<int>(c), e});
      }
    }
  }
  report.cells.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      const Job& job = jobs[k];
      report.cells[k] = RunCell(datasets[job.dataset], cfg.combos[job.combo],
                                job.estimator, cfg.options);
    }
  };
  const int threads = std::min<int>(cfg.threads, static_cast<int>(jobs.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  report.summaries = Summarize(cfg, report.cells);
  return report;
}

std::vector<CriterionCheck> EvaluateSweepCriteria(const SweepReport& report) {
  const SweepConfig& cfg = report.config;
  const CovariateCombination c_only = CovariateCombination::Parse("C");
  const CovariateCombination ca = CovariateCombination::Parse("C,A");
  const CovariateCombination cz = CovariateCombination::Parse("C,Z");
  const CovariateCombination cyi = CovariateCombination::Parse("C,YI");
  std::vector<CriterionCheck> out;

  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return std::string(buf);
  };

  CriterionCheck best{"best_pehe_C_A", true, ""};
  CriterionCheck worst{"worst_C_Z", true, ""};
  for (EstimatorKind e : cfg.estimators) {
    const std::string name = EstimatorName(e);
    const CellSummary* s_ca = report.Find(e, ca);
    const CellSummary* s_cz = report.Find(e, cz);
    if (!s_ca || s_ca->n_ok == 0) {
      best.pass = false;
      best.detail += name + ": {C,A} missing; ";
    } else {
      for (const CovariateCombination& combo : cfg.combos) {
        if (combo == ca) continue;
        const CellSummary* s = report.Find(e, combo);
        if (!s || s->n_ok == 0) continue;
        const double slack = combo == cyi ? 1.05 : 1.0;
        if (!(s_ca->median_pehe <= slack * s->median_pehe)) {
          best.pass = false;
          best.detail += name + ": " + combo.Label() + " " + fmt(s->median_pehe) +
                         " < {C,A} " + fmt(s_ca->median_pehe) + "; ";
        }
      }
    }
    if (!s_cz || s_cz->n_ok == 0) {
      worst.pass = false;
      worst.detail += name + ": {C,Z} missing; ";
      continue;
    }
    for (int metric = 0; metric < 2; ++metric) {
      const char* label = metric == 0 ? "PEHE" : "ATE";
      auto value = [metric](const CellSummary& s) {
        return metric == 0 ? s.median_pehe : s.median_eps_ate;
      };
      double best_other = INFINITY, max_other = -INFINITY;
      std::string argmax;
      for (const CovariateCombination& combo : cfg.combos) {
        const CellSummary* s = report.Find(e, combo);
        if (!s || s->n_ok == 0) continue;
        best_other = std::min(best_other, value(*s));
        if (combo == cz) continue;
        if (value(*s) > max_other) {
          max_other = value(*s);
          argmax = combo.Label();
        }
      }
      const double z = value(*s_cz);
      const double ratio = z / best_other;
      const bool ok = z > max_other && ratio >= 1.5;
      if (!ok) {
        worst.pass = false;
        worst.detail += name + " " + label + ": {C,Z} " + fmt(z) + " vs max other " +
                        argmax + " " + fmt(max_other) + ", worst/best " +
                        fmt(ratio) + "; ";
      }
    }
  }
  if (best.pass) best.detail = "{C,A} has the lowest median PEHE for every estimator";
  if (worst.pass) worst.detail = "{C,Z} is worst with ratio >= 1.5 in every column";
  out.push_back(best);
  out.push_back(worst);

  CriterionCheck neutral{"ate_neutrality_C_vs_C_A", true, ""};
  const double n_seeds = static_cast<double>(cfg.seeds.size());
  for (EstimatorKind e : cfg.estimators) {
    if (e == EstimatorKind::kCfr) continue;
    const CellSummary* a = report.Find(e, c_only);
    const CellSummary* b = report.Find(e, ca);
    if (!a || !b || a->n_ok == 0 || b->n_ok == 0) {
      neutral.pass = false;
      neutral.detail += EstimatorName(e) + ": cells missing; ";
      continue;
    }
    const double se = std::sqrt((a->sd_eps_ate * a->sd_eps_ate +
                                 b->sd_eps_ate * b->sd_eps_ate) / n_seeds);
    const double gap = std::abs(a->median_eps_ate - b->median_eps_ate);
    const bool ok = gap == 0.0 || gap < 3.0 * se;
    neutral.detail += EstimatorName(e) + " gap " + fmt(gap) + " vs 3se " +
                      fmt(3.0 * se) + (ok ? "" : " FAIL") + "; ";
    if (!ok) neutral.pass = false;
  }
  out.push_back(neutral);
  return out;
}

}  // namespace causalbench
