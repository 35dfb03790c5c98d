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


#ifndef CAUSALBENCH_METRICS_H_
#define CAUSALBENCH_METRICS_H_

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "causalbench/synthgen.h"

namespace causalbench {

struct TrueEffects {
  Eigen::VectorXd ite;
  double ate = 0.0;
};

// Throws kMissingPotentialOutcomes.
TrueEffects ComputeTrueEffects(const LabeledDataset& ds);
TrueEffects ComputeTrueEffects(const Eigen::VectorXd& y0,
                               const Eigen::VectorXd& y1);

// Mean squared ITE error. Throws kLengthMismatch.
double Pehe(const Eigen::VectorXd& ite_true, const Eigen::VectorXd& ite_hat);

double EpsAte(double ate_true, double ate_hat);

struct EffectEstimates {
  std::string estimator;
  std::string combo;
  std::optional<Eigen::VectorXd> ite_hat;
  double ate_hat = 0.0;
  // True when ate_hat is the mean of ite_hat rather than a direct estimate.
  bool ate_from_ite = false;
};

}  // namespace causalbench

#endif  // CAUSALBENCH_METRICS_H_
