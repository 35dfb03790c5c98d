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

#include "causalbench/propensity.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "causalbench/errors.h"
#include "causalbench/numeric.h"

namespace causalbench {
namespace {

constexpr double kRidgeJitter = 1e-8;
constexpr int kMaxHalvings = 60;
// Beyond this |eta| the fitted probability is 0 or 1 to double precision; a
// vanishing gradient there signals separation, not an interior optimum.
constexpr double kSeparationEta = 30.0;

Eigen::MatrixXd WithIntercept(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd xt(x.rows(), x.cols() + 1);
  xt.col(0).setOnes();
  xt.rightCols(x.cols()) = x;
  return xt;
}

void CheckInputs(const Eigen::MatrixXd& x, const Eigen::VectorXi& t) {
  if (x.rows() != t.size()) {
    Fail(ErrorCode::kLengthMismatch, "design rows differ from treatment length");
  }
  if (!x.allFinite()) Fail(ErrorCode::kNonFinite, "design matrix not finite");
  if (x.rows() <= x.cols() + 1) {
    Fail(ErrorCode::kDegenerate, "need more samples than design columns");
  }
  int treated = 0;
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    if (t[i] != 0 && t[i] != 1) Fail(ErrorCode::kConfig, "t must be binary");
    treated += t[i];
  }
  if (treated == 0 || treated == t.size()) {
    Fail(ErrorCode::kDegenerate, "treatment is constant");
  }
}

// sum_i t_i * eta_i - log(1 + exp(eta_i)), evaluated without overflow.
double LogLikelihoodFromEta(const Eigen::VectorXd& eta,
                            const Eigen::VectorXi& t) {
  StableSum ll;
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    const double e = eta[i];
    const double softplus =
        e > 0 ? e + std::log1p(std::exp(-e)) : std::log1p(std::exp(e));
    ll.Add(t[i] * e - softplus);
  }
  return ll.value();
}

void FinishScores(const Eigen::MatrixXd& xt, PropensityFit& fit,
                  const PropensityOptions& opts) {
  fit.clip_lo = opts.clip_lo;
  fit.clip_hi = opts.clip_hi;
  fit.linear_predictor = xt * fit.coef;
  fit.scores.resize(fit.linear_predictor.size());
  fit.n_clipped = 0;
  for (Eigen::Index i = 0; i < fit.scores.size(); ++i) {
    const double p = Sigmoid(fit.linear_predictor[i]);
    const double c = std::clamp(p, opts.clip_lo, opts.clip_hi);
    if (c != p) ++fit.n_clipped;
    fit.scores[i] = c;
  }
}

void CheckClip(const PropensityOptions& opts) {
  if (!(opts.clip_lo > 0.0 && opts.clip_lo < opts.clip_hi &&
        opts.clip_hi < 1.0)) {
    Fail(ErrorCode::kConfig, "clip bounds must satisfy 0 < lo < hi < 1");
  }
}

// Balance moments g = (1/n) sum w_i x~_i and Jacobian dg/dcoef.
struct BalanceState {
  Eigen::VectorXd g;
  Eigen::MatrixXd jac;
  double loss = 0.0;
};

BalanceState EvaluateBalance(const Eigen::MatrixXd& xt,
                             const Eigen::VectorXi& t,
                             const Eigen::VectorXd& coef, bool with_jacobian) {
  const Eigen::VectorXd eta = xt * coef;
  const double n = static_cast<double>(xt.rows());
  Eigen::VectorXd w(eta.size());
  Eigen::VectorXd c(eta.size());
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    // t/e = 1 + exp(-eta); (1-t)/(1-e) = 1 + exp(eta).
    if (t[i] == 1) {
      const double ex = std::exp(-eta[i]);
      w[i] = 1.0 + ex;
      c[i] = ex;
    } else {
      const double ex = std::exp(eta[i]);
      w[i] = -(1.0 + ex);
      c[i] = ex;
    }
  }
  BalanceState s;
  s.g = xt.transpose() * w / n;
  s.loss = s.g.squaredNorm();
  if (!std::isfinite(s.loss)) s.loss = std::numeric_limits<double>::infinity();
  if (with_jacobian) {
    s.jac = -(xt.transpose() * c.asDiagonal() * xt) / n;
  }
  return s;
}

}  // namespace

double LogLikelihood(const Eigen::MatrixXd& x, const Eigen::VectorXi& t,
                     const Eigen::VectorXd& coef) {
  return LogLikelihoodFromEta(WithIntercept(x) * coef, t);
}

PropensityFit FitLogistic(const Eigen::MatrixXd& x, const Eigen::VectorXi& t,
                          const PropensityOptions& opts) {
  CheckInputs(x, t);
  CheckClip(opts);
  const Eigen::MatrixXd xt = WithIntercept(x);
  const Eigen::VectorXd tv = t.cast<double>();
  const Eigen::Index p = xt.cols();

  PropensityFit fit;
  fit.method = "logistic";
  fit.coef = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd eta = Eigen::VectorXd::Zero(xt.rows());
  double ll = LogLikelihoodFromEta(eta, t);

  for (int iter = 0; iter <= opts.max_iter; ++iter) {
    const Eigen::VectorXd mu = eta.unaryExpr([](double e) { return Sigmoid(e); });
    const Eigen::VectorXd grad = xt.transpose() * (tv - mu);
    fit.final_residual = grad.cwiseAbs().maxCoeff();
    if (fit.final_residual < opts.tol) {
      fit.converged = true;
      break;
    }
    if (iter == opts.max_iter) break;

    const Eigen::VectorXd w = mu.cwiseProduct(Eigen::VectorXd::Ones(mu.size()) - mu);
    Eigen::MatrixXd h = xt.transpose() * w.asDiagonal() * xt;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
    const Eigen::VectorXd d = ldlt.vectorD();
    const double dmax = d.cwiseAbs().maxCoeff();
    if (ldlt.info() != Eigen::Success || !(d.minCoeff() > 1e-14 * dmax) ||
        dmax == 0.0) {
      h.diagonal().array() += kRidgeJitter;
      ldlt.compute(h);
      fit.ridge_jitter = true;
    }
    const Eigen::VectorXd step = ldlt.solve(grad);
    if (!step.allFinite()) break;

    double scale = 1.0;
    bool accepted = false;
    for (int k = 0; k < kMaxHalvings; ++k, scale *= 0.5) {
      const Eigen::VectorXd trial = fit.coef + scale * step;
      const Eigen::VectorXd trial_eta = xt * trial;
      const double trial_ll = LogLikelihoodFromEta(trial_eta, t);
      if (trial_ll >= ll) {
        fit.coef = trial;
        eta = trial_eta;
        ll = trial_ll;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    ++fit.iterations;
    fit.trace.push_back(ll);
  }
  if (fit.converged && eta.size() > 0 &&
      eta.cwiseAbs().maxCoeff() > kSeparationEta) {
    fit.converged = false;
  }
  FinishScores(xt, fit, opts);
  return fit;
}

double CbpsBalanceLoss(const Eigen::MatrixXd& x, const Eigen::VectorXi& t,
                       const Eigen::VectorXd& coef) {
  return EvaluateBalance(WithIntercept(x), t, coef, false).loss;
}

PropensityFit FitCbps(const Eigen::MatrixXd& x, const Eigen::VectorXi& t,
                      const PropensityOptions& opts) {
  PropensityFit fit = FitLogistic(x, t, opts);
  fit.method = "cbps";
  fit.trace.clear();
  fit.iterations = 0;
  const Eigen::MatrixXd xt = WithIntercept(x);
  const double tol = opts.cbps_tol_per_col * static_cast<double>(xt.cols());

  BalanceState state = EvaluateBalance(xt, t, fit.coef, true);
  fit.converged = state.loss <= tol;
  for (int iter = 0; iter < opts.cbps_max_iter && !fit.converged; ++iter) {
    const Eigen::VectorXd grad = 2.0 * state.jac.transpose() * state.g;
    // Gauss-Newton direction solves g + J d = 0; it is a descent direction for
    // ||g||^2 whenever J is nonsingular. Fall back to steepest descent.
    Eigen::VectorXd dir = state.jac.fullPivLu().solve(-state.g);
    double slope = grad.dot(dir);
    if (!dir.allFinite() || !(slope < 0.0)) {
      dir = -grad;
      slope = -grad.squaredNorm();
    }
    double scale = 1.0;
    bool accepted = false;
    for (int k = 0; k < kMaxHalvings; ++k, scale *= 0.5) {
      const Eigen::VectorXd trial = fit.coef + scale * dir;
      const double loss = EvaluateBalance(xt, t, trial, false).loss;
      if (loss <= state.loss + 1e-4 * scale * slope) {
        fit.coef = trial;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    state = EvaluateBalance(xt, t, fit.coef, true);
    ++fit.iterations;
    fit.trace.push_back(state.loss);
    fit.converged = state.loss <= tol;
  }
  fit.final_residual = state.loss;
  FinishScores(xt, fit, opts);
  return fit;
}

PropensityFit ScoresFromCoefficients(const Eigen::MatrixXd& x,
                                     const Eigen::VectorXd& coef,
                                     const PropensityOptions& opts) {
  CheckClip(opts);
  if (coef.size() != x.cols() + 1) {
    Fail(ErrorCode::kSchemaMismatch,
         "coefficient count does not match design columns + intercept");
  }
  PropensityFit fit;
  fit.coef = coef;
  fit.converged = true;
  FinishScores(WithIntercept(x), fit, opts);
  return fit;
}

BalanceDiagnostics BalanceReport(const Eigen::MatrixXd& x,
                                 const Eigen::VectorXi& t,
                                 const Eigen::VectorXd& weights) {
  if (x.rows() != t.size() || weights.size() != t.size()) {
    Fail(ErrorCode::kLengthMismatch, "balance inputs differ in length");
  }
  double wt = 0.0, wc = 0.0;
  Eigen::Index nt = 0, nc = 0;
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    if (!(weights[i] >= 0.0)) Fail(ErrorCode::kConfig, "weights must be >= 0");
    if (t[i] == 1) {
      wt += weights[i];
      ++nt;
    } else {
      wc += weights[i];
      ++nc;
    }
  }
  if (wt <= 0.0 || wc <= 0.0) {
    Fail(ErrorCode::kZeroGroup, "a treatment group has zero total weight");
  }
  BalanceDiagnostics out;
  out.smd.resize(x.cols());
  for (Eigen::Index k = 0; k < x.cols(); ++k) {
    double mt = 0.0, mc = 0.0, ut = 0.0, uc = 0.0;
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      if (t[i] == 1) {
        mt += weights[i] * x(i, k);
        ut += x(i, k);
      } else {
        mc += weights[i] * x(i, k);
        uc += x(i, k);
      }
    }
    mt /= wt;
    mc /= wc;
    ut /= static_cast<double>(nt);
    uc /= static_cast<double>(nc);
    double vt = 0.0, vc = 0.0;
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      if (t[i] == 1) {
        vt += (x(i, k) - ut) * (x(i, k) - ut);
      } else {
        vc += (x(i, k) - uc) * (x(i, k) - uc);
      }
    }
    vt = nt > 1 ? vt / static_cast<double>(nt - 1) : 0.0;
    vc = nc > 1 ? vc / static_cast<double>(nc - 1) : 0.0;
    const double pooled = std::sqrt(0.5 * (vt + vc));
    const double diff = mt - mc;
    if (pooled > 0.0) {
      out.smd[k] = diff / pooled;
    } else {
      out.smd[k] = diff == 0.0 ? 0.0
                               : std::copysign(
                                     std::numeric_limits<double>::infinity(),
                                     diff);
    }
  }
  out.max_abs_smd = x.cols() > 0 ? out.smd.cwiseAbs().maxCoeff() : 0.0;
  return out;
}

}  // namespace causalbench
