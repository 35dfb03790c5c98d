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

#ifndef CAUSALBENCH_RANDOM_H_
#define CAUSALBENCH_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace causalbench {

std::uint64_t SplitMix64(std::uint64_t x);
std::uint64_t Fnv1a64(std::string_view text);

// Seeded random stream. Streams are derived from (seed, name) so that each
// generated variable owns an independent sequence: adding a new variable never
// shifts the draws of an existing one.
class Rng {
 public:
  explicit Rng(std::uint64_t state) : engine_(state) {}

  static Rng ForStream(std::uint64_t seed, std::string_view stream);

  // Child stream keyed by name, independent of how much this stream has been
  // consumed.
  Rng Child(std::string_view name) const;

  double Uniform(double lo, double hi);
  double Normal(double mean, double stddev);
  bool Bernoulli(double p);
  void FillNormal(std::span<double> out, double mean, double stddev);
  void FillUniform(std::span<double> out, double lo, double hi);
  std::uint64_t NextU64() { return engine_(); }

  std::mt19937_64& engine() { return engine_; }

 private:
  Rng(std::uint64_t state, std::uint64_t key) : engine_(state), key_(key) {}

  std::mt19937_64 engine_;
  std::uint64_t key_ = 0;
};

}  // namespace causalbench

#endif  // CAUSALBENCH_RANDOM_H_
