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

#include "causalbench/report.h"

#include <cstdio>
#include <sstream>

#include "causalbench/errors.h"
#include "causalbench/serialize.h"

namespace causalbench {
namespace {

std::string Format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

double MetricValue(const CellSummary& s, int metric) {
  return metric == 0 ? s.median_pehe : s.median_eps_ate;
}

const char* MarkerName(Marker m) {
  switch (m) {
    case Marker::kBest: return "best";
    case Marker::kWorst: return "worst";
    case Marker::kNone: break;
  }
  return "";
}

}  // namespace

ReportFormat ParseReportFormat(const std::string& name) {
  if (name == "md" || name == "markdown") return ReportFormat::kMarkdown;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  Fail(ErrorCode::kConfig, "unknown report format '" + name + "'");
}

std::vector<Marker> ColumnMarkers(const SweepReport& report, int metric) {
  std::vector<Marker> out(report.summaries.size(), Marker::kNone);
  for (EstimatorKind e : report.config.estimators) {
    int best = -1, worst = -1;
    for (std::size_t k = 0; k < report.summaries.size(); ++k) {
      const CellSummary& s = report.summaries[k];
      if (s.estimator != e || s.n_ok == 0) continue;
      const double v = MetricValue(s, metric);
      if (best < 0 || v < MetricValue(report.summaries[best], metric)) best = k;
      if (worst < 0 || v > MetricValue(report.summaries[worst], metric)) worst = k;
    }
    if (best >= 0 && best != worst) {
      out[best] = Marker::kBest;
      out[worst] = Marker::kWorst;
    }
  }
  return out;
}

std::string RenderMarkdown(const SweepReport& report) {
  const SweepConfig& cfg = report.config;
  std::ostringstream md;
  md << "| Combo |";
  for (int metric = 0; metric < 2; ++metric) {
    for (EstimatorKind e : cfg.estimators) {
      md << " " << (metric == 0 ? "PEHE " : "eps_ATE ") << EstimatorName(e) << " |";
    }
  }
  md << "\n|---|";
  for (std::size_t k = 0; k < 2 * cfg.estimators.size(); ++k) md << "---|";
  md << "\n";
  if (cfg.estimators.empty()) return md.str();

  const std::vector<Marker> marks[2] = {ColumnMarkers(report, 0),
                                        ColumnMarkers(report, 1)};
  for (const CovariateCombination& combo : cfg.combos) {
    md << "| " << combo.Label() << " |";
    for (int metric = 0; metric < 2; ++metric) {
      for (EstimatorKind e : cfg.estimators) {
        std::size_t idx = report.summaries.size();
        for (std::size_t k = 0; k < report.summaries.size(); ++k) {
          if (report.summaries[k].estimator == e && report.summaries[k].combo == combo) {
            idx = k;
          }
        }
        if (idx == report.summaries.size() || report.summaries[idx].n_ok == 0) {
          md << " n/a |";
          continue;
        }
        const std::string v = Format("%.6g", MetricValue(report.summaries[idx], metric));
        switch (marks[metric][idx]) {
          case Marker::kBest: md << " **" << v << "** (best) |"; break;
          case Marker::kWorst: md << " _" << v << "_ (worst) |"; break;
          case Marker::kNone: md << " " << v << " |"; break;
        }
      }
    }
    md << "\n";
  }
  md << "\nMedians over " << cfg.seeds.size()
     << " seeds. PEHE is the mean squared ITE error; eps_ATE is |ATE - ATE_hat|.\n";
  return md.str();
}

std::string RenderSummaryCsv(const SweepReport& report) {
  const std::vector<Marker> pm = ColumnMarkers(report, 0);
  const std::vector<Marker> am = ColumnMarkers(report, 1);
  std::ostringstream csv;
  csv << "combo,estimator,n_ok,n_failed,median_pehe,median_root_pehe,"
         "median_eps_ate,sd_pehe,sd_eps_ate,pehe_marker,eps_ate_marker\n";
  for (std::size_t k = 0; k < report.summaries.size(); ++k) {
    const CellSummary& s = report.summaries[k];
    csv << '"' << s.combo.ToString() << "\"," << EstimatorName(s.estimator) << ','
        << s.n_ok << ',' << s.n_failed << ',' << Format("%.17g", s.median_pehe) << ','
        << Format("%.17g", s.median_root_pehe) << ','
        << Format("%.17g", s.median_eps_ate) << ',' << Format("%.17g", s.sd_pehe)
        << ',' << Format("%.17g", s.sd_eps_ate) << ',' << MarkerName(pm[k]) << ','
        << MarkerName(am[k]) << '\n';
  }
  return csv.str();
}

std::string RenderCellsCsv(const SweepReport& report) {
  std::ostringstream csv;
  csv << "seed,combo,estimator,ok,error_code,ate_true,ate_hat,pehe,root_pehe,eps_ate\n";
  for (const CellResult& c : report.cells) {
    csv << c.seed << ",\"" << c.combo.ToString() << "\"," << EstimatorName(c.estimator)
        << ',' << (c.ok ? 1 : 0) << ',' << c.error_code << ','
        << Format("%.17g", c.ate_true) << ',' << Format("%.17g", c.ate_hat) << ','
        << Format("%.17g", c.pehe) << ',' << Format("%.17g", c.root_pehe) << ','
        << Format("%.17g", c.eps_ate) << '\n';
  }
  return csv.str();
}

std::string RenderJson(const SweepReport& report) {
  return nlohmann::json(report).dump(2) + "\n";
}

std::string RenderJsonWithoutTimestamp(const SweepReport& report) {
  nlohmann::json j = report;
  j.erase("timestamp");
  return j.dump(2) + "\n";
}

void EmitReport(const SweepReport& report, ReportFormat format,
                const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) Fail(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  switch (format) {
    case ReportFormat::kMarkdown:
      WriteTextFile(dir / "report.md", RenderMarkdown(report));
      break;
    case ReportFormat::kCsv:
      WriteTextFile(dir / "summary.csv", RenderSummaryCsv(report));
      WriteTextFile(dir / "cells.csv", RenderCellsCsv(report));
      break;
    case ReportFormat::kJson:
      WriteTextFile(dir / "report.json", RenderJson(report));
      break;
  }
}

SweepReport LoadReport(const std::filesystem::path& json_path) {
  const nlohmann::json j = ReadJsonFile(json_path);
  try {
    return j.get<SweepReport>();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kSchemaMismatch, "malformed report: " + std::string(e.what()));
  }
}

}  // namespace causalbench
