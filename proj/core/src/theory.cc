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

#include "causalbench/theory.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "causalbench/adjust.h"
#include "causalbench/errors.h"
#include "causalbench/numeric.h"
#include "causalbench/propensity.h"
#include "causalbench/random.h"

namespace causalbench {
namespace {

std::string RepStream(int replication, const char* name) {
  return "theory/rep/" + std::to_string(replication) + "/" + name;
}

Eigen::VectorXd Dot(const Eigen::MatrixXd& c, const std::vector<double>& w) {
  return c * Eigen::Map<const Eigen::VectorXd>(w.data(), w.size());
}

// beta . (per-column stratified difference of C means).
double ConfounderImbalance(const SemSample& s, const Stratification* strat,
                           const std::vector<double>& beta) {
  double out = 0.0;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    const Eigen::VectorXd col = s.c.col(k);
    const double diff =
        strat ? AteStratified(col, s.t, *strat) : AteDifferenceOfMeans(col, s.t);
    out += beta[k] * diff;
  }
  return out;
}

std::vector<int> QuantileBins(const Eigen::VectorXd& v, int bins) {
  std::vector<double> sorted(v.data(), v.data() + v.size());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> cuts;
  const std::int64_t n = v.size();
  for (int k = 1; k < bins; ++k) {
    const double c = sorted[static_cast<std::size_t>(k * n / bins)];
    if (c > sorted.front() && (cuts.empty() || c > cuts.back())) cuts.push_back(c);
  }
  std::vector<int> out(n);
  for (std::int64_t i = 0; i < n; ++i) {
    out[i] = static_cast<int>(std::upper_bound(cuts.begin(), cuts.end(), v[i]) -
                              cuts.begin());
  }
  return out;
}

double Paired(const std::vector<double>& a, const std::vector<double>& b,
              std::vector<double>& diff) {
  diff.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  return Summarize(diff).se;
}

}  // namespace

std::string NcKindName(NcKind kind) {
  switch (kind) {
    case NcKind::kAdjustment: return "adjustment";
    case NcKind::kInstrument: return "instrument";
    case NcKind::kMediator: return "mediator";
    case NcKind::kCollider: return "collider";
  }
  return "unknown";
}

NcKind ParseNcKind(const std::string& name) {
  for (NcKind k : {NcKind::kAdjustment, NcKind::kInstrument, NcKind::kMediator,
                   NcKind::kCollider}) {
    if (NcKindName(k) == name) return k;
  }
  Fail(ErrorCode::kConfig, "unknown NC kind '" + name + "'");
}

void LinearSemSpec::Validate() const {
  const std::size_t d = beta.size();
  if (d == 0 || alpha0.size() != d || alpha1.size() != d || assign_c.size() != d) {
    Fail(ErrorCode::kConfig, "beta, alpha0, alpha1 and assign_c need equal length");
  }
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  if (!finite(beta) || !finite(alpha0) || !finite(alpha1) || !finite(assign_c) ||
      !std::isfinite(gamma) || !std::isfinite(tau) || !std::isfinite(alpha2) ||
      !std::isfinite(assign_nc) || !std::isfinite(nc_to_y)) {
    Fail(ErrorCode::kConfig, "SEM coefficients must be finite");
  }
  if (n < 4 || replications < 1 || strata < 1 || nc_bins < 1) {
    Fail(ErrorCode::kConfig, "invalid Monte-Carlo sizes");
  }
  if (proxy_noise_sd < 0.0 || nc_noise_sd < 0.0 || outcome_noise_sd < 0.0) {
    Fail(ErrorCode::kConfig, "noise scales must be >= 0");
  }
}

SemSample SimulateSem(const LinearSemSpec& spec, int replication) {
  spec.Validate();
  const std::int64_t n = spec.n;
  const int d = spec.c_dim();
  SemSample s;
  s.c.resize(n, d);
  Rng rng_c = Rng::ForStream(spec.seed, RepStream(replication, "C"));
  rng_c.FillNormal({s.c.data(), static_cast<std::size_t>(s.c.size())}, 0.0, 1.0);
  Eigen::VectorXd u(n), eps(n), draw(n);
  Rng::ForStream(spec.seed, RepStream(replication, "u"))
      .FillNormal({u.data(), static_cast<std::size_t>(n)}, 0.0, 1.0);
  Rng::ForStream(spec.seed, RepStream(replication, "eps"))
      .FillNormal({eps.data(), static_cast<std::size_t>(n)}, 0.0, 1.0);
  Rng::ForStream(spec.seed, RepStream(replication, "t"))
      .FillUniform({draw.data(), static_cast<std::size_t>(n)}, 0.0, 1.0);

  s.nc = spec.nc_noise_sd * u;
  const Eigen::VectorXd lin_c = Dot(s.c, spec.assign_c);
  s.t.resize(n);
  const bool inst = spec.nc_kind == NcKind::kInstrument;
  for (std::int64_t i = 0; i < n; ++i) {
    double p;
    if (spec.assignment == AssignmentForm::kMixture && inst) {
      p = 0.5 * Sigmoid(lin_c[i]) + 0.5 * Sigmoid(spec.assign_nc * s.nc[i]);
    } else {
      p = Sigmoid(lin_c[i] + (inst ? spec.assign_nc * s.nc[i] : 0.0));
    }
    s.t[i] = draw[i] < p ? 1 : 0;
  }
  const Eigen::VectorXd t = s.t.cast<double>();
  Eigen::VectorXd base = Dot(s.c, spec.beta) + spec.outcome_noise_sd * eps;
  base.array() += spec.gamma;
  switch (spec.nc_kind) {
    case NcKind::kAdjustment:
      s.y = base + spec.tau * t + spec.nc_to_y * s.nc;
      break;
    case NcKind::kInstrument:
      s.y = base + spec.tau * t;
      break;
    case NcKind::kMediator:
      s.nc = spec.mediator_kappa * t + spec.nc_noise_sd * u;
      s.y = base + (spec.tau - spec.nc_to_y * spec.mediator_kappa) * t +
            spec.nc_to_y * s.nc;
      break;
    case NcKind::kCollider:
      s.y = base + spec.tau * t;
      s.nc = spec.collider_t * t + spec.collider_y * s.y + spec.nc_noise_sd * u;
      break;
  }
  return s;
}

Eigen::VectorXd ProxyWithoutNc(const LinearSemSpec& spec, const SemSample& s,
                               int replication) {
  if (spec.proxy_mode == ProxyMode::kFitted) {
    return FitLogistic(s.c, s.t).linear_predictor;
  }
  Eigen::VectorXd p = Dot(s.c, spec.alpha0);
  if (spec.proxy_noise_sd > 0.0) {
    Eigen::VectorXd e(p.size());
    Rng::ForStream(spec.seed, RepStream(replication, "proxy0"))
        .FillNormal({e.data(), static_cast<std::size_t>(e.size())}, 0.0,
                    spec.proxy_noise_sd);
    p += e;
  }
  return p;
}

Eigen::VectorXd ProxyWithNc(const LinearSemSpec& spec, const SemSample& s,
                            int replication) {
  if (spec.proxy_mode == ProxyMode::kFitted) {
    Eigen::MatrixXd x(s.c.rows(), s.c.cols() + 1);
    x << s.c, s.nc;
    return FitLogistic(x, s.t).linear_predictor;
  }
  Eigen::VectorXd p = Dot(s.c, spec.alpha1) + spec.alpha2 * s.nc;
  if (spec.proxy_noise_sd > 0.0) {
    Eigen::VectorXd e(p.size());
    Rng::ForStream(spec.seed, RepStream(replication, "proxy1"))
        .FillNormal({e.data(), static_cast<std::size_t>(e.size())}, 0.0,
                    spec.proxy_noise_sd);
    p += e;
  }
  return p;
}

DeltaEstimate DeltaD(const SemSample& s, const std::vector<double>& beta,
                     double tau) {
  DeltaEstimate out;
  out.empirical = AteDifferenceOfMeans(s.y, s.t) - tau;
  out.closed_form = ConfounderImbalance(s, nullptr, beta);
  return out;
}

DeltaEstimate DeltaFap(const SemSample& s, const Eigen::VectorXd& proxy,
                       int strata, const std::vector<double>& beta, double tau) {
  const Stratification strat = Stratify(proxy, s.t, strata);
  DeltaEstimate out;
  out.empirical = AteStratified(s.y, s.t, strat) - tau;
  out.closed_form = ConfounderImbalance(s, &strat, beta);
  return out;
}

DeltaNcEstimate DeltaFapNc(const SemSample& s, const Eigen::VectorXd& proxy,
                           const LinearSemSpec& spec) {
  const Stratification strat = Stratify(proxy, s.t, spec.strata);
  DeltaNcEstimate out;
  out.empirical = AteStratified(s.y, s.t, strat) - spec.tau;
  out.closed_form_strata = ConfounderImbalance(s, &strat, spec.beta);

  const std::vector<int> bin = QuantileBins(s.nc, spec.nc_bins);
  const int nb = *std::max_element(bin.begin(), bin.end()) + 1;
  const int nj = strat.size();
  const int d = spec.c_dim();
  const int cells = nj * nb;
  std::vector<int> n_t(cells, 0), n_c(cells, 0);
  Eigen::MatrixXd sum_t = Eigen::MatrixXd::Zero(cells, d);
  Eigen::MatrixXd sum_c = Eigen::MatrixXd::Zero(cells, d);
  std::vector<double> sum_p(cells, 0.0), sum_nc(cells, 0.0), sum_c_all(cells, 0.0);
  const std::int64_t n = s.t.size();
  for (std::int64_t i = 0; i < n; ++i) {
    const int cell = strat.assignment[i] * nb + bin[i];
    if (s.t[i] == 1) {
      ++n_t[cell];
      sum_t.row(cell) += s.c.row(i);
    } else {
      ++n_c[cell];
      sum_c.row(cell) += s.c.row(i);
    }
    sum_p[cell] += proxy[i];
    sum_nc[cell] += s.nc[i];
    sum_c_all[cell] += s.c(i, 0);
  }
  const bool identity_applies = spec.proxy_mode == ProxyMode::kStructural &&
                                spec.proxy_noise_sd == 0.0 && d == 1 &&
                                spec.alpha1[0] != 0.0;
  double dropped = 0.0;
  for (int j = 0; j < nj; ++j) {
    double inner = 0.0;
    for (int b = 0; b < nb; ++b) {
      const int cell = j * nb + b;
      const int total = n_t[cell] + n_c[cell];
      if (total == 0) continue;
      if (identity_applies) {
        const double analytic = ConfounderGivenNc(
            sum_p[cell] / total, sum_nc[cell] / total, spec.alpha1[0], spec.alpha2);
        out.conf_nc_max_abs_error = std::max(
            out.conf_nc_max_abs_error, std::abs(sum_c_all[cell] / total - analytic));
      }
      if (n_t[cell] == 0 || n_c[cell] == 0) {
        dropped += total;
        continue;
      }
      const double q_cell = static_cast<double>(total) / strat.counts[j];
      double imbalance = 0.0;
      for (int k = 0; k < d; ++k) {
        imbalance += spec.beta[k] *
                     (sum_t(cell, k) / n_t[cell] - sum_c(cell, k) / n_c[cell]);
      }
      inner += q_cell * imbalance;
    }
    out.closed_form_binned += strat.q[j] * inner;
  }
  out.dropped_mass = dropped / static_cast<double>(n);
  return out;
}

ColliderDecomposition ColliderBias(const SemSample& s,
                                   const Eigen::VectorXd& proxy, int strata,
                                   const std::vector<double>& beta, double tau) {
  const Stratification strat = Stratify(proxy, s.t, strata);
  ColliderDecomposition out;
  out.empirical = AteStratified(s.y, s.t, strat) - tau;
  out.imbalance_part = ConfounderImbalance(s, &strat, beta);
  const int nj = strat.size();
  const int d = static_cast<int>(s.c.cols());
  std::vector<std::vector<int>> rows(nj);
  for (std::size_t i = 0; i < strat.assignment.size(); ++i) {
    rows[strat.assignment[i]].push_back(static_cast<int>(i));
  }
  out.tau_prime.assign(nj, 0.0);
  for (int j = 0; j < nj; ++j) {
    const int m = static_cast<int>(rows[j].size());
    Eigen::MatrixXd design(m, d + 2);
    Eigen::VectorXd target(m);
    for (int r = 0; r < m; ++r) {
      const int i = rows[j][r];
      design(r, 0) = 1.0;
      design(r, 1) = s.t[i];
      design.row(r).tail(d) = s.c.row(i);
      target[r] = s.y[i];
    }
    if (m <= d + 2) {
      Fail(ErrorCode::kTooFewSamples, "stratum too small for the outcome regression");
    }
    const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(target);
    out.tau_prime[j] = coef[1] - tau;
    out.extra_term += strat.q[j] * out.tau_prime[j];
  }
  return out;
}

double ConfounderGivenNc(double p_j, double nc, double alpha1, double alpha2) {
  return (p_j - alpha2 * nc) / alpha1;
}

double BalancedNcValue(double p_j, double alpha0, double alpha1, double alpha2) {
  return (p_j - alpha1 * p_j / alpha0) / alpha2;
}

McStat Summarize(const std::vector<double>& values) {
  McStat out;
  if (values.empty()) return out;
  out.mean = StableMean(values);
  if (values.size() > 1) {
    out.se = SampleStdDev(values) / std::sqrt(static_cast<double>(values.size()));
  }
  return out;
}

ErrorReport RunMonteCarlo(const LinearSemSpec& spec) {
  spec.Validate();
  std::vector<double> dd, ddc, ddg, df, dfc, dfg, dn, dns, dnb, dng, diff, ce, be;
  ErrorReport rep;
  rep.strata = spec.strata;
  rep.replications = spec.replications;
  for (int r = 0; r < spec.replications; ++r) {
    const SemSample s = SimulateSem(spec, r);
    const Eigen::VectorXd p0 = ProxyWithoutNc(spec, s, r);
    const Eigen::VectorXd p1 = ProxyWithNc(spec, s, r);
    const DeltaEstimate d = DeltaD(s, spec.beta, spec.tau);
    const DeltaEstimate f = DeltaFap(s, p0, spec.strata, spec.beta, spec.tau);
    const DeltaEstimate f1 = DeltaFap(s, p0, 1, spec.beta, spec.tau);
    if (f1.empirical != d.empirical || f1.closed_form != d.closed_form) {
      rep.j1_collapse_exact = false;
    }
    const DeltaNcEstimate nc = DeltaFapNc(s, p1, spec);
    const ColliderDecomposition cz = ColliderBias(s, p1, spec.strata, spec.beta, spec.tau);
    const ColliderDecomposition c0 = ColliderBias(s, p0, spec.strata, spec.beta, spec.tau);
    dd.push_back(d.empirical);
    ddc.push_back(d.closed_form);
    ddg.push_back(d.empirical - d.closed_form);
    df.push_back(f.empirical);
    dfc.push_back(f.closed_form);
    dfg.push_back(f.empirical - f.closed_form);
    dn.push_back(nc.empirical);
    dns.push_back(nc.closed_form_strata);
    dnb.push_back(nc.closed_form_binned);
    dng.push_back(nc.empirical - nc.closed_form_strata);
    diff.push_back(nc.empirical - f.empirical);
    ce.push_back(cz.extra_term);
    be.push_back(c0.extra_term);
    rep.max_dropped_mass = std::max(rep.max_dropped_mass, nc.dropped_mass);
    rep.max_conf_nc_error = std::max(rep.max_conf_nc_error, nc.conf_nc_max_abs_error);
  }
  rep.delta_d = Summarize(dd);
  rep.delta_d_closed = Summarize(ddc);
  rep.delta_d_gap = Summarize(ddg);
  rep.delta_fap = Summarize(df);
  rep.delta_fap_closed = Summarize(dfc);
  rep.delta_fap_gap = Summarize(dfg);
  rep.delta_fap_nc = Summarize(dn);
  rep.delta_fap_nc_closed_strata = Summarize(dns);
  rep.delta_fap_nc_closed_binned = Summarize(dnb);
  rep.delta_fap_nc_gap = Summarize(dng);
  rep.nc_minus_fap = Summarize(diff);
  rep.collider_extra = Summarize(ce);
  rep.baseline_extra = Summarize(be);
  return rep;
}

LinearSemSpec DefaultEquivalenceSpec(NcKind kind) {
  LinearSemSpec spec;
  spec.nc_kind = kind;
  spec.proxy_mode = ProxyMode::kFitted;
  spec.tau = 1.0;
  spec.beta = {1.0};
  spec.seed = 2;
  switch (kind) {
    case NcKind::kAdjustment:
      spec.assign_c = {1.0};
      spec.nc_to_y = 1.0;
      break;
    case NcKind::kInstrument:
      // Under a logistic law in (C, NC) the fitted score is the true score and
      // stratifying on it stays nearly unbiased; a mixture law is not linear
      // in the logit, so adding NC to the fitted score distorts the strata.
      spec.assignment = AssignmentForm::kMixture;
      spec.assign_c = {2.0};
      spec.assign_nc = 2.0;
      break;
    case NcKind::kMediator:
      spec.assign_c = {1.0};
      spec.mediator_kappa = 1.0;
      spec.nc_to_y = 1.0;
      break;
    case NcKind::kCollider:
      spec.assign_c = {1.0};
      spec.collider_t = 1.0;
      spec.collider_y = 1.0;
      break;
  }
  return spec;
}

EquivalenceVerdict CheckEquivalence(const LinearSemSpec& spec) {
  spec.Validate();
  std::vector<double> d, dn;
  for (int r = 0; r < spec.replications; ++r) {
    const SemSample s = SimulateSem(spec, r);
    d.push_back(DeltaFap(s, ProxyWithoutNc(spec, s, r), spec.strata, spec.beta,
                         spec.tau).empirical);
    dn.push_back(DeltaFap(s, ProxyWithNc(spec, s, r), spec.strata, spec.beta,
                          spec.tau).empirical);
  }
  EquivalenceVerdict v;
  v.kind = spec.nc_kind;
  v.delta = Summarize(d);
  v.delta_nc = Summarize(dn);
  std::vector<double> diff;
  Paired(dn, d, diff);
  v.difference = Summarize(diff);
  const bool identical =
      std::all_of(diff.begin(), diff.end(), [](double x) { return x == 0.0; });
  v.equivalent = identical || std::abs(v.difference.mean) < 3.0 * v.difference.se;
  return v;
}

std::vector<LinearSemSpec> RandomInstrumentSpecs(int count, std::uint64_t seed,
                                                 std::int64_t n, int reps,
                                                 int strata) {
  Rng rng = Rng::ForStream(seed, "theory/lower-bound");
  auto sign = [&rng] { return rng.Bernoulli(0.5) ? 1.0 : -1.0; };
  std::vector<LinearSemSpec> out;
  for (int k = 0; k < count; ++k) {
    LinearSemSpec spec;
    spec.nc_kind = NcKind::kInstrument;
    spec.proxy_mode = ProxyMode::kStructural;
    spec.assignment = AssignmentForm::kLogistic;
    spec.assign_c = {rng.Uniform(0.5, 2.0)};
    spec.assign_nc = sign() * rng.Uniform(0.5, 2.0);
    spec.beta = {sign() * rng.Uniform(0.5, 2.0)};
    spec.alpha0 = {1.0};
    spec.alpha1 = {rng.Uniform(0.5, 2.0)};
    spec.alpha2 = sign() * rng.Uniform(0.5, 2.0);
    spec.tau = 1.0;
    spec.n = n;
    spec.replications = reps;
    spec.strata = strata;
    spec.seed = SplitMix64(seed + static_cast<std::uint64_t>(k));
    out.push_back(spec);
  }
  return out;
}

LowerBoundResult CheckLowerBound(const LinearSemSpec& spec) {
  spec.Validate();
  std::vector<double> d, dn;
  for (int r = 0; r < spec.replications; ++r) {
    const SemSample s = SimulateSem(spec, r);
    d.push_back(DeltaFap(s, ProxyWithoutNc(spec, s, r), spec.strata, spec.beta,
                         spec.tau).empirical);
    dn.push_back(DeltaFap(s, ProxyWithNc(spec, s, r), spec.strata, spec.beta,
                          spec.tau).empirical);
  }
  LowerBoundResult out;
  out.delta_fap = Summarize(d);
  out.delta_fap_nc = Summarize(dn);
  std::vector<double> diff;
  out.paired_se = Paired(dn, d, diff);
  out.holds = std::abs(out.delta_fap_nc.mean) >=
              std::abs(out.delta_fap.mean) - 3.0 * out.paired_se;
  return out;
}

InvariantResult CheckClosedForms(const TheoryGridConfig& cfg) {
  InvariantResult res{"closed_forms", true, ""};
  std::ostringstream detail;
  int points = 0;
  for (double gamma : cfg.gammas) {
    for (double tau : cfg.taus) {
      for (double beta : cfg.betas) {
        LinearSemSpec spec;
        spec.nc_kind = NcKind::kAdjustment;
        spec.nc_to_y = 0.0;
        spec.gamma = gamma;
        spec.tau = tau;
        spec.beta = {beta};
        spec.n = cfg.n;
        spec.replications = cfg.replications;
        spec.strata = cfg.strata;
        spec.seed = cfg.seed;
        const ErrorReport r = RunMonteCarlo(spec);
        auto agree = [](const McStat& gap) {
          return gap.mean == 0.0 || std::abs(gap.mean) < 3.0 * gap.se;
        };
        bool ok = agree(r.delta_d_gap) && agree(r.delta_fap_gap) &&
                  r.j1_collapse_exact;
        if (beta == 0.0) {
          ok = ok && r.delta_d_closed.mean == 0.0 && r.delta_d_closed.se == 0.0 &&
               r.delta_fap_closed.mean == 0.0 && r.delta_fap_closed.se == 0.0;
        }
        ++points;
        if (!ok) {
          res.pass = false;
          detail << "fail at gamma=" << gamma << " tau=" << tau << " beta=" << beta
                 << " (d gap " << r.delta_d_gap.mean << "+-" << r.delta_d_gap.se
                 << ", fap gap " << r.delta_fap_gap.mean << "+-"
                 << r.delta_fap_gap.se << ", j1 "
                 << (r.j1_collapse_exact ? "exact" : "differs") << "); ";
        }
      }
    }
  }
  detail << points << " grid points";
  res.detail = detail.str();
  return res;
}

InvariantResult CheckLowerBoundGrid(const TheoryGridConfig& cfg, int* holds,
                                    int* total) {
  const std::vector<LinearSemSpec> specs = RandomInstrumentSpecs(
      cfg.lower_bound_configs, cfg.seed, cfg.n, cfg.replications, cfg.strata);
  int ok = 0;
  for (const LinearSemSpec& spec : specs) ok += CheckLowerBound(spec).holds ? 1 : 0;
  const int count = static_cast<int>(specs.size());
  if (holds) *holds = ok;
  if (total) *total = count;
  InvariantResult res{"lower_bound", false, ""};
  res.pass = count > 0 &&
             ok >= cfg.lower_bound_pass_fraction * static_cast<double>(count);
  res.detail = std::to_string(ok) + "/" + std::to_string(count) + " configs hold";
  return res;
}

InvariantResult CheckEquivalenceClaims(const TheoryGridConfig& cfg,
                                       std::vector<EquivalenceVerdict>* out) {
  InvariantResult res{"equivalence", true, ""};
  for (NcKind kind : cfg.equivalence_kinds) {
    LinearSemSpec spec = DefaultEquivalenceSpec(kind);
    spec.n = cfg.n;
    spec.replications = cfg.replications;
    spec.strata = cfg.strata;
    const EquivalenceVerdict v = CheckEquivalence(spec);
    const bool expected = kind == NcKind::kAdjustment;
    if (v.equivalent != expected) res.pass = false;
    std::ostringstream s;
    s << NcKindName(kind) << ": " << (v.equivalent ? "equivalent" : "non-equivalent")
      << " (diff " << v.difference.mean << " se " << v.difference.se << "); ";
    res.detail += s.str();
    if (out) out->push_back(v);
  }
  return res;
}

bool TheoryReport::AllPass() const {
  return std::all_of(invariants.begin(), invariants.end(),
                     [](const InvariantResult& r) { return r.pass; });
}

TheoryReport VerifyTheory(const TheoryGridConfig& cfg) {
  TheoryReport report;
  report.invariants.push_back(CheckClosedForms(cfg));
  report.invariants.push_back(CheckLowerBoundGrid(cfg, &report.lower_bound_holds,
                                                  &report.lower_bound_total));
  report.invariants.push_back(CheckEquivalenceClaims(cfg, &report.verdicts));
  return report;
}

}  // namespace causalbench
