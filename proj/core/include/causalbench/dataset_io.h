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

// On-disk dataset layout:
//   <dir>/data.csv   header "I__0,C__0,...,t,y_f,y0,y1", one row per sample
//   <dir>/meta.json  {"config": DgpConfig, "weights": StructuralWeights}
// Values are written with 17 significant digits so a read-back is exact.

#ifndef CAUSALBENCH_DATASET_IO_H_
#define CAUSALBENCH_DATASET_IO_H_

#include <filesystem>

#include "causalbench/synthgen.h"

namespace causalbench {

void WriteDataset(const LabeledDataset& ds, const std::filesystem::path& dir);

// The noise record and true propensities are not persisted; the returned
// dataset carries neither. Throws kIo on malformed input.
LabeledDataset ReadDataset(const std::filesystem::path& dir);

}  // namespace causalbench

#endif  // CAUSALBENCH_DATASET_IO_H_
