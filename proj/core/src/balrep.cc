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

#include "causalbench/balrep.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "causalbench/errors.h"
#include "causalbench/numeric.h"
#include "causalbench/random.h"

namespace causalbench {
namespace {

using Stack = std::vector<DenseLayer>;

void ApplyActivation(Activation act, Eigen::MatrixXd& z) {
  // tanh(z) = 1 - 2 / (exp(2z) + 1); Eigen vectorizes exp but not tanh for
  // doubles. Saturates cleanly to +-1 when exp overflows or underflows.
  if (act == Activation::kTanh) {
    z = (1.0 - 2.0 / ((2.0 * z.array()).exp() + 1.0)).matrix();
  }
}

// acts[0] is the input, acts[l + 1] the output of layer l.
void ForwardStack(const Stack& layers, Activation act, bool last_linear,
                  std::vector<Eigen::MatrixXd>& acts) {
  acts.resize(layers.size() + 1);
  for (std::size_t l = 0; l < layers.size(); ++l) {
    Eigen::MatrixXd z = acts[l] * layers[l].weight.transpose();
    z.rowwise() += layers[l].bias.transpose();
    if (!(last_linear && l + 1 == layers.size())) ApplyActivation(act, z);
    acts[l + 1] = std::move(z);
  }
}

// Accumulates parameter gradients into grads and returns dL/d input.
Eigen::MatrixXd BackwardStack(const Stack& layers, Activation act,
                              bool last_linear,
                              const std::vector<Eigen::MatrixXd>& acts,
                              Eigen::MatrixXd d_out, Stack& grads) {
  for (std::size_t l = layers.size(); l-- > 0;) {
    const bool activated = !(last_linear && l + 1 == layers.size());
    if (activated && act == Activation::kTanh) {
      d_out.array() *= 1.0 - acts[l + 1].array().square();
    }
    grads[l].weight += d_out.transpose() * acts[l];
    grads[l].bias += d_out.colwise().sum().transpose();
    d_out = d_out * layers[l].weight;
  }
  return d_out;
}

Stack ZerosLike(const Stack& s) {
  Stack out(s.size());
  for (std::size_t l = 0; l < s.size(); ++l) {
    out[l].weight = Eigen::MatrixXd::Zero(s[l].weight.rows(), s[l].weight.cols());
    out[l].bias = Eigen::VectorXd::Zero(s[l].bias.size());
  }
  return out;
}

Stack InitStack(int in, const std::vector<int>& widths, bool add_output,
                Rng& rng) {
  Stack s;
  std::vector<int> sizes = widths;
  if (add_output) sizes.push_back(1);
  int fan_in = in;
  for (int width : sizes) {
    DenseLayer layer;
    const double bound = std::sqrt(6.0 / (fan_in + width));
    layer.weight.resize(width, fan_in);
    rng.FillUniform({layer.weight.data(), static_cast<std::size_t>(layer.weight.size())},
                    -bound, bound);
    layer.bias = Eigen::VectorXd::Zero(width);
    s.push_back(std::move(layer));
    fan_in = width;
  }
  return s;
}

Eigen::MatrixXd Standardize(const RepNet& net, const Eigen::MatrixXd& x) {
  if (x.cols() != net.input_dim()) {
    Fail(ErrorCode::kSchemaMismatch, "input columns do not match the network");
  }
  Eigen::MatrixXd z = x;
  z.rowwise() -= net.input_mean.transpose();
  z.array().rowwise() /= net.input_scale.transpose().array();
  return z;
}

struct Pass {
  ObjectiveParts parts;
  RepNet grad;  // same shapes as the net; only parameter stacks are used
};

// Objective and optional gradient on standardized inputs.
Pass Evaluate(const RepNet& net, const Eigen::MatrixXd& xs,
              const Eigen::VectorXi& t, const Eigen::VectorXd& y, double alpha,
              bool with_grad) {
  const Eigen::Index b = xs.rows();
  std::vector<int> idx_t, idx_c;
  for (Eigen::Index i = 0; i < b; ++i) {
    (t[i] == 1 ? idx_t : idx_c).push_back(static_cast<int>(i));
  }
  std::vector<Eigen::MatrixXd> rep_acts(1, xs);
  ForwardStack(net.rep, net.activation, false, rep_acts);
  const Eigen::MatrixXd& phi = rep_acts.back();

  std::vector<Eigen::MatrixXd> h1_acts(1, phi(idx_t, Eigen::all));
  std::vector<Eigen::MatrixXd> h0_acts(1, phi(idx_c, Eigen::all));
  ForwardStack(net.head1, net.activation, true, h1_acts);
  ForwardStack(net.head0, net.activation, true, h0_acts);
  const Eigen::VectorXd err1 = h1_acts.back().col(0) - y(idx_t);
  const Eigen::VectorXd err0 = h0_acts.back().col(0) - y(idx_c);

  Pass pass;
  const double inv_b = 1.0 / static_cast<double>(b);
  pass.parts.factual = (err1.squaredNorm() + err0.squaredNorm()) * inv_b;
  Eigen::VectorXd diff;
  if (!idx_t.empty() && !idx_c.empty()) {
    diff = h1_acts[0].colwise().mean().transpose() -
           h0_acts[0].colwise().mean().transpose();
    pass.parts.imbalance = diff.squaredNorm();
  }
  pass.parts.total = pass.parts.factual + alpha * pass.parts.imbalance;
  if (!with_grad) return pass;

  pass.grad.rep = ZerosLike(net.rep);
  pass.grad.head0 = ZerosLike(net.head0);
  pass.grad.head1 = ZerosLike(net.head1);
  Eigen::MatrixXd d_phi = Eigen::MatrixXd::Zero(b, phi.cols());
  if (!idx_t.empty()) {
    Eigen::MatrixXd d1 = 2.0 * inv_b * err1;
    Eigen::MatrixXd dp = BackwardStack(net.head1, net.activation, true, h1_acts,
                                       std::move(d1), pass.grad.head1);
    if (!idx_c.empty()) {
      dp.rowwise() += (2.0 * alpha / idx_t.size()) * diff.transpose();
    }
    d_phi(idx_t, Eigen::all) = dp;
  }
  if (!idx_c.empty()) {
    Eigen::MatrixXd d0 = 2.0 * inv_b * err0;
    Eigen::MatrixXd dp = BackwardStack(net.head0, net.activation, true, h0_acts,
                                       std::move(d0), pass.grad.head0);
    if (!idx_t.empty()) {
      dp.rowwise() -= (2.0 * alpha / idx_c.size()) * diff.transpose();
    }
    d_phi(idx_c, Eigen::all) = dp;
  }
  BackwardStack(net.rep, net.activation, false, rep_acts, std::move(d_phi),
                pass.grad.rep);
  return pass;
}

void CheckTraining(const Eigen::MatrixXd& x, const Eigen::VectorXi& t,
                   const Eigen::VectorXd& y, const CfrOptions& opts) {
  if (x.rows() != t.size() || y.size() != t.size()) {
    Fail(ErrorCode::kLengthMismatch, "x, t and y differ in rows");
  }
  if (!x.allFinite() || !y.allFinite()) Fail(ErrorCode::kNonFinite, "inputs not finite");
  if (opts.batch_size < 1 || x.rows() < opts.batch_size) {
    Fail(ErrorCode::kConfig, "need at least batch_size rows");
  }
  if (opts.epochs < 0 || !(opts.step_size > 0.0) || opts.alpha < 0.0 ||
      opts.rep_layers.empty()) {
    Fail(ErrorCode::kConfig, "invalid CFR options");
  }
  const int treated = t.sum();
  if (treated == 0 || treated == t.size()) {
    Fail(ErrorCode::kEmptyGroup, "both arms are needed for training");
  }
}

// Seed-keyed order of the rows that does not depend on their input order.
std::vector<int> CanonicalOrder(const Eigen::MatrixXd& x,
                                const Eigen::VectorXi& t,
                                const Eigen::VectorXd& y, std::uint64_t seed) {
  const Eigen::Index n = x.rows();
  std::vector<std::uint64_t> key(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    std::uint64_t h = SplitMix64(seed ^ 0x9e3779b97f4a7c15ULL);
    auto mix = [&h](double v) {
      std::uint64_t bits;
      std::memcpy(&bits, &v, sizeof bits);
      h = SplitMix64(h ^ bits);
    };
    for (Eigen::Index k = 0; k < x.cols(); ++k) mix(x(i, k));
    mix(static_cast<double>(t[i]));
    mix(y[i]);
    key[i] = h;
  }
  std::vector<int> order(n);
  for (Eigen::Index i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (key[a] != key[b]) return key[a] < key[b];
    for (Eigen::Index k = 0; k < x.cols(); ++k) {
      if (x(a, k) != x(b, k)) return x(a, k) < x(b, k);
    }
    if (t[a] != t[b]) return t[a] < t[b];
    return y[a] < y[b];
  });
  return order;
}

void Step(Stack& params, const Stack& grads, double step) {
  for (std::size_t l = 0; l < params.size(); ++l) {
    params[l].weight -= step * grads[l].weight;
    params[l].bias -= step * grads[l].bias;
  }
}

}  // namespace

std::string ActivationName(Activation a) {
  return a == Activation::kTanh ? "tanh" : "identity";
}

Activation ParseActivation(const std::string& name) {
  if (name == "tanh") return Activation::kTanh;
  if (name == "identity") return Activation::kIdentity;
  Fail(ErrorCode::kConfig, "unknown activation '" + name + "'");
}

int RepNet::rep_dim() const {
  return rep.empty() ? input_dim() : static_cast<int>(rep.back().bias.size());
}

int RepNet::ParameterCount() const {
  int count = 0;
  for (const Stack* s : {&rep, &head0, &head1}) {
    for (const DenseLayer& l : *s) {
      count += static_cast<int>(l.weight.size() + l.bias.size());
    }
  }
  return count;
}

Eigen::VectorXd RepNet::Parameters() const {
  Eigen::VectorXd theta(ParameterCount());
  Eigen::Index pos = 0;
  for (const Stack* s : {&rep, &head0, &head1}) {
    for (const DenseLayer& l : *s) {
      theta.segment(pos, l.weight.size()) = l.weight.reshaped();
      pos += l.weight.size();
      theta.segment(pos, l.bias.size()) = l.bias;
      pos += l.bias.size();
    }
  }
  return theta;
}

void RepNet::SetParameters(const Eigen::VectorXd& theta) {
  if (theta.size() != ParameterCount()) {
    Fail(ErrorCode::kSchemaMismatch, "parameter vector has the wrong length");
  }
  Eigen::Index pos = 0;
  for (Stack* s : {&rep, &head0, &head1}) {
    for (DenseLayer& l : *s) {
      l.weight.reshaped() = theta.segment(pos, l.weight.size());
      pos += l.weight.size();
      l.bias = theta.segment(pos, l.bias.size());
      pos += l.bias.size();
    }
  }
}

double MmdLinear(const Eigen::MatrixXd& rep_t, const Eigen::MatrixXd& rep_c) {
  if (rep_t.rows() == 0 || rep_c.rows() == 0) {
    Fail(ErrorCode::kEmptyGroup, "both groups need at least one row");
  }
  if (rep_t.cols() != rep_c.cols()) {
    Fail(ErrorCode::kSchemaMismatch, "representation widths differ");
  }
  return (rep_t.colwise().mean() - rep_c.colwise().mean()).squaredNorm();
}

RepNet InitRepNet(const Eigen::MatrixXd& x, const CfrOptions& opts) {
  RepNet net;
  net.activation = opts.activation;
  const Eigen::Index d = x.cols();
  net.input_mean = Eigen::VectorXd::Zero(d);
  net.input_scale = Eigen::VectorXd::Ones(d);
  if (opts.standardize_inputs && x.rows() > 1) {
    for (Eigen::Index k = 0; k < d; ++k) {
      const Eigen::VectorXd col = x.col(k);
      net.input_mean[k] = StableMean(AsSpan(col));
      const double sd = SampleStdDev(AsSpan(col));
      net.input_scale[k] = sd > 0.0 ? sd : 1.0;
    }
  }
  Rng rng = Rng::ForStream(opts.seed, "cfr/init");
  net.rep = InitStack(static_cast<int>(d), opts.rep_layers, false, rng);
  Rng rng0 = rng.Child("head0");
  Rng rng1 = rng.Child("head1");
  net.head0 = InitStack(net.rep_dim(), opts.head_layers, true, rng0);
  net.head1 = InitStack(net.rep_dim(), opts.head_layers, true, rng1);
  if (opts.zero_init_heads) {
    for (Stack* s : {&net.head0, &net.head1}) {
      for (DenseLayer& l : *s) {
        l.weight.setZero();
        l.bias.setZero();
      }
    }
  }
  return net;
}

CfrFit FitCfr(const Eigen::MatrixXd& x_in, const Eigen::VectorXi& t_in,
              const Eigen::VectorXd& y_in, const CfrOptions& opts) {
  CheckTraining(x_in, t_in, y_in, opts);
  const std::vector<int> order = CanonicalOrder(x_in, t_in, y_in, opts.seed);
  const Eigen::MatrixXd x = x_in(order, Eigen::all);
  const Eigen::VectorXi t = t_in(order);
  const Eigen::VectorXd y = y_in(order);
  const Eigen::Index n = x.rows();

  CfrFit fit;
  fit.alpha = opts.alpha;
  fit.net = InitRepNet(x, opts);
  if (!opts.zero_init_heads) {
    const double y_mean = StableMean(AsSpan(y));
    fit.net.head0.back().bias.setConstant(y_mean);
    fit.net.head1.back().bias.setConstant(y_mean);
  }
  const Eigen::MatrixXd xs = Standardize(fit.net, x);

  std::vector<int> perm(n);
  for (Eigen::Index i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
  for (int epoch = 0; epoch < opts.epochs; ++epoch) {
    Rng rng = Rng::ForStream(opts.seed, "cfr/epoch/" + std::to_string(epoch));
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    double f_sum = 0.0, i_sum = 0.0, t_sum = 0.0;
    for (Eigen::Index start = 0; start < n; start += opts.batch_size) {
      const Eigen::Index len = std::min<Eigen::Index>(opts.batch_size, n - start);
      const std::vector<int> rows(perm.begin() + start, perm.begin() + start + len);
      const Pass pass = Evaluate(fit.net, xs(rows, Eigen::all), t(rows), y(rows),
                                 opts.alpha, true);
      if (!std::isfinite(pass.parts.total)) {
        Fail(ErrorCode::kNonFinite,
             "objective became non-finite at epoch " + std::to_string(epoch));
      }
      const double share = static_cast<double>(len) / static_cast<double>(n);
      f_sum += share * pass.parts.factual;
      i_sum += share * pass.parts.imbalance;
      t_sum += share * pass.parts.total;
      Step(fit.net.rep, pass.grad.rep, opts.step_size);
      Step(fit.net.head0, pass.grad.head0, opts.step_size);
      Step(fit.net.head1, pass.grad.head1, opts.step_size);
    }
    fit.trace.factual.push_back(f_sum);
    fit.trace.imbalance.push_back(i_sum);
    fit.trace.total.push_back(t_sum);
  }
  return fit;
}

Eigen::MatrixXd Represent(const RepNet& net, const Eigen::MatrixXd& x) {
  std::vector<Eigen::MatrixXd> acts(1, Standardize(net, x));
  ForwardStack(net.rep, net.activation, false, acts);
  return acts.back();
}

PotentialOutcomes PredictPotentialOutcomes(const RepNet& net,
                                           const Eigen::MatrixXd& x) {
  std::vector<Eigen::MatrixXd> h0(1, Represent(net, x));
  std::vector<Eigen::MatrixXd> h1(1, h0[0]);
  ForwardStack(net.head0, net.activation, true, h0);
  ForwardStack(net.head1, net.activation, true, h1);
  return {h0.back().col(0), h1.back().col(0)};
}

ObjectiveParts CfrObjective(const RepNet& net, const Eigen::MatrixXd& x,
                            const Eigen::VectorXi& t, const Eigen::VectorXd& y,
                            double alpha) {
  if (x.rows() != t.size() || y.size() != t.size()) {
    Fail(ErrorCode::kLengthMismatch, "x, t and y differ in rows");
  }
  return Evaluate(net, Standardize(net, x), t, y, alpha, false).parts;
}

Eigen::VectorXd CfrGradient(const RepNet& net, const Eigen::MatrixXd& x,
                            const Eigen::VectorXi& t, const Eigen::VectorXd& y,
                            double alpha) {
  if (x.rows() != t.size() || y.size() != t.size()) {
    Fail(ErrorCode::kLengthMismatch, "x, t and y differ in rows");
  }
  Pass pass = Evaluate(net, Standardize(net, x), t, y, alpha, true);
  pass.grad.input_mean = net.input_mean;
  return pass.grad.Parameters();
}

}  // namespace causalbench
