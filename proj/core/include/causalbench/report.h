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


#ifndef CAUSALBENCH_REPORT_H_
#define CAUSALBENCH_REPORT_H_

#include <filesystem>
#include <string>
#include <vector>

#include "causalbench/harness.h"

namespace causalbench {

enum class ReportFormat { kMarkdown, kCsv, kJson };

// Throws kConfig.
ReportFormat ParseReportFormat(const std::string& name);

enum class Marker { kNone, kBest, kWorst };

// Best and worst median per (metric, estimator) column over the combos.
// metric 0 is PEHE, 1 is eps_ATE. Indexed like report.summaries.
std::vector<Marker> ColumnMarkers(const SweepReport& report, int metric);

// Results table: one row per combo, column groups for
// the two metrics, values at 6 significant digits.
std::string RenderMarkdown(const SweepReport& report);
// Long-form summary rows at full precision.
std::string RenderSummaryCsv(const SweepReport& report);
std::string RenderCellsCsv(const SweepReport& report);
std::string RenderJson(const SweepReport& report);
// JSON without the timestamp, used for determinism comparisons.
std::string RenderJsonWithoutTimestamp(const SweepReport& report);

// Writes report.md, summary.csv + cells.csv, or report.json into dir.
void EmitReport(const SweepReport& report, ReportFormat format,
                const std::filesystem::path& dir);

SweepReport LoadReport(const std::filesystem::path& json_path);

}  // namespace causalbench

#endif  // CAUSALBENCH_REPORT_H_
