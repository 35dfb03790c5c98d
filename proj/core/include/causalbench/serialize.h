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


#ifndef CAUSALBENCH_SERIALIZE_H_
#define CAUSALBENCH_SERIALIZE_H_

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "causalbench/adjust.h"
#include "causalbench/balrep.h"
#include "causalbench/boost.h"
#include "causalbench/harness.h"
#include "causalbench/propensity.h"
#include "causalbench/synthgen.h"
#include "causalbench/theory.h"

// JSON mappings. Readers accept partial objects and keep defaults for missing
// keys; unknown keys in configuration objects raise kConfig.

namespace causalbench {

void to_json(nlohmann::json& j, const DgpConfig& v);
void from_json(const nlohmann::json& j, DgpConfig& v);
void to_json(nlohmann::json& j, const StructuralWeights& v);
void from_json(const nlohmann::json& j, StructuralWeights& v);
void to_json(nlohmann::json& j, const CovariateCombination& v);
void from_json(const nlohmann::json& j, CovariateCombination& v);

void to_json(nlohmann::json& j, const PropensityOptions& v);
void from_json(const nlohmann::json& j, PropensityOptions& v);
void to_json(nlohmann::json& j, const PropensityFit& v);
void from_json(const nlohmann::json& j, PropensityFit& v);

void to_json(nlohmann::json& j, const MatchOptions& v);
void from_json(const nlohmann::json& j, MatchOptions& v);

void to_json(nlohmann::json& j, const GbmOptions& v);
void from_json(const nlohmann::json& j, GbmOptions& v);
void to_json(nlohmann::json& j, const BoostedModel& v);
void from_json(const nlohmann::json& j, BoostedModel& v);

void to_json(nlohmann::json& j, const CfrOptions& v);
void from_json(const nlohmann::json& j, CfrOptions& v);
void to_json(nlohmann::json& j, const RepNet& v);
void from_json(const nlohmann::json& j, RepNet& v);
void to_json(nlohmann::json& j, const TrainTrace& v);

void to_json(nlohmann::json& j, const EstimatorOptions& v);
void from_json(const nlohmann::json& j, EstimatorOptions& v);
void to_json(nlohmann::json& j, const SweepConfig& v);
void from_json(const nlohmann::json& j, SweepConfig& v);
void to_json(nlohmann::json& j, const CellResult& v);
void from_json(const nlohmann::json& j, CellResult& v);
void to_json(nlohmann::json& j, const CellSummary& v);
void from_json(const nlohmann::json& j, CellSummary& v);
void to_json(nlohmann::json& j, const SweepReport& v);
void from_json(const nlohmann::json& j, SweepReport& v);

void to_json(nlohmann::json& j, const TheoryGridConfig& v);
void from_json(const nlohmann::json& j, TheoryGridConfig& v);
void to_json(nlohmann::json& j, const McStat& v);
void to_json(nlohmann::json& j, const EquivalenceVerdict& v);
void to_json(nlohmann::json& j, const TheoryReport& v);

// File helpers; both throw kIo.
nlohmann::json ReadJsonFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

}  // namespace causalbench

#endif  // CAUSALBENCH_SERIALIZE_H_
