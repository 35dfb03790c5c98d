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

#include "causalbench/metrics.h"

#include <cmath>

#include "causalbench/errors.h"
#include "causalbench/numeric.h"

namespace causalbench {

TrueEffects ComputeTrueEffects(const Eigen::VectorXd& y0,
                               const Eigen::VectorXd& y1) {
  if (y0.size() != y1.size()) {
    Fail(ErrorCode::kLengthMismatch, "y0 and y1 differ in length");
  }
  TrueEffects out;
  out.ite = y1 - y0;
  out.ate = StableMean(AsSpan(out.ite));
  return out;
}

TrueEffects ComputeTrueEffects(const LabeledDataset& ds) {
  return ComputeTrueEffects(ds.y0(), ds.y1());
}

double Pehe(const Eigen::VectorXd& ite_true, const Eigen::VectorXd& ite_hat) {
  if (ite_true.size() != ite_hat.size()) {
    Fail(ErrorCode::kLengthMismatch, "ITE vectors differ in length");
  }
  if (ite_true.size() == 0) return 0.0;
  StableSum sum;
  for (Eigen::Index i = 0; i < ite_true.size(); ++i) {
    const double e = ite_true[i] - ite_hat[i];
    sum.Add(e * e);
  }
  return sum.value() / static_cast<double>(ite_true.size());
}

double EpsAte(double ate_true, double ate_hat) {
  return std::abs(ate_true - ate_hat);
}

}  // namespace causalbench
