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


#ifndef CAUSALBENCH_BALREP_H_
#define CAUSALBENCH_BALREP_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace causalbench {

enum class Activation { kTanh, kIdentity };

std::string ActivationName(Activation a);
Activation ParseActivation(const std::string& name);

struct CfrOptions {
  double alpha = 1.0;
  int epochs = 300;
  int batch_size = 256;
  double step_size = 1e-2;
  std::uint64_t seed = 0;
  std::vector<int> rep_layers = {32, 32};
  std::vector<int> head_layers = {16};
  Activation activation = Activation::kTanh;
  // Zero all head parameters at initialization.
  bool zero_init_heads = false;
  bool standardize_inputs = true;
};

struct DenseLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;
};

// Shared representation followed by one head per arm. Hidden layers use the
// activation; each head ends in a linear unit.
struct RepNet {
  Activation activation = Activation::kTanh;
  Eigen::VectorXd input_mean;
  Eigen::VectorXd input_scale;
  std::vector<DenseLayer> rep;
  std::vector<DenseLayer> head0;
  std::vector<DenseLayer> head1;

  int input_dim() const { return static_cast<int>(input_mean.size()); }
  int rep_dim() const;
  int ParameterCount() const;
  Eigen::VectorXd Parameters() const;
  void SetParameters(const Eigen::VectorXd& theta);
};

struct TrainTrace {
  std::vector<double> factual;
  std::vector<double> imbalance;
  std::vector<double> total;
};

struct CfrFit {
  RepNet net;
  TrainTrace trace;
  double alpha = 1.0;
};

struct PotentialOutcomes {
  Eigen::VectorXd y0;
  Eigen::VectorXd y1;
};

// ||mean(rep_t) - mean(rep_c)||^2. Throws kEmptyGroup.
double MmdLinear(const Eigen::MatrixXd& rep_t, const Eigen::MatrixXd& rep_c);

// Freshly initialized network for the given input columns.
RepNet InitRepNet(const Eigen::MatrixXd& x, const CfrOptions& opts);

// Throws kNonFinite if the objective diverges.
CfrFit FitCfr(const Eigen::MatrixXd& x, const Eigen::VectorXi& t,
              const Eigen::VectorXd& y, const CfrOptions& opts = {});

// Representation of raw (unstandardized) inputs.
Eigen::MatrixXd Represent(const RepNet& net, const Eigen::MatrixXd& x);

PotentialOutcomes PredictPotentialOutcomes(const RepNet& net,
                                           const Eigen::MatrixXd& x);

struct ObjectiveParts {
  double factual = 0.0;
  double imbalance = 0.0;
  double total = 0.0;
};

// Objective on the given rows: mean squared factual error plus
// alpha * MmdLinear. The imbalance term is 0 when an arm is absent.
ObjectiveParts CfrObjective(const RepNet& net, const Eigen::MatrixXd& x,
                            const Eigen::VectorXi& t, const Eigen::VectorXd& y,
                            double alpha);

// Analytic gradient of CfrObjective with respect to Parameters().
Eigen::VectorXd CfrGradient(const RepNet& net, const Eigen::MatrixXd& x,
                            const Eigen::VectorXi& t, const Eigen::VectorXd& y,
                            double alpha);

}  // namespace causalbench

#endif  // CAUSALBENCH_BALREP_H_
