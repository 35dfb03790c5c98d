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

#include "causalbench/dataset_io.h"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "causalbench/errors.h"
#include "causalbench/serialize.h"

namespace causalbench {
namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    if (!field.empty() && field.back() == '\r') field.pop_back();
    out.push_back(field);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ParseDouble(const std::string& s, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
    Fail(ErrorCode::kIo, "bad number '" + s + "' on line " + std::to_string(line));
  }
  return v;
}

}  // namespace

void WriteDataset(const LabeledDataset& ds, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) Fail(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());

  std::vector<const Eigen::MatrixXd*> blocks;
  std::string header;
  for (CovariateRole role : kAllRoles) {
    if (!ds.HasRole(role)) continue;
    const Eigen::MatrixXd& m = ds.block(role);
    blocks.push_back(&m);
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      header += std::string(RoleName(role)) + "__" + std::to_string(k) + ",";
    }
  }
  header += "t,y_f";
  const bool po = ds.HasPotentialOutcomes();
  if (po) header += ",y0,y1";

  std::ofstream out(dir / "data.csv", std::ios::binary);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + (dir / "data.csv").string());
  out << header << '\n';
  char buf[40];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  for (std::int64_t i = 0; i < ds.size(); ++i) {
    for (const Eigen::MatrixXd* m : blocks) {
      for (Eigen::Index k = 0; k < m->cols(); ++k) {
        put((*m)(i, k));
        out << ',';
      }
    }
    out << ds.t()[i] << ',';
    put(ds.y_factual()[i]);
    if (po) {
      out << ',';
      put(ds.y0()[i]);
      out << ',';
      put(ds.y1()[i]);
    }
    out << '\n';
  }
  if (!out) Fail(ErrorCode::kIo, "write failed for data.csv");

  nlohmann::json meta = {{"format_version", 1},
                         {"config", ds.config()},
                         {"weights", ds.weights()}};
  WriteTextFile(dir / "meta.json", meta.dump(2) + "\n");
}

LabeledDataset ReadDataset(const std::filesystem::path& dir) {
  const nlohmann::json meta = ReadJsonFile(dir / "meta.json");
  DgpConfig config;
  StructuralWeights weights;
  try {
    config = meta.at("config").get<DgpConfig>();
    weights = meta.at("weights").get<StructuralWeights>();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kIo, "malformed meta.json: " + std::string(e.what()));
  }

  std::ifstream in(dir / "data.csv");
  if (!in) Fail(ErrorCode::kIo, "cannot open " + (dir / "data.csv").string());
  std::string line;
  if (!std::getline(in, line)) Fail(ErrorCode::kIo, "data.csv is empty");
  const std::vector<std::string> header = SplitCsvLine(line);

  // Column layout: role blocks, then t, y_f and optionally y0, y1.
  struct Column {
    CovariateRole role;
    int index;
  };
  std::vector<Column> cov;
  int t_col = -1, yf_col = -1, y0_col = -1, y1_col = -1;
  std::map<CovariateRole, int> widths;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string& h = header[c];
    if (h == "t") {
      t_col = static_cast<int>(c);
    } else if (h == "y_f") {
      yf_col = static_cast<int>(c);
    } else if (h == "y0") {
      y0_col = static_cast<int>(c);
    } else if (h == "y1") {
      y1_col = static_cast<int>(c);
    } else {
      const std::size_t sep = h.find("__");
      const auto role = sep == std::string::npos
                            ? std::nullopt
                            : ParseRole(std::string_view(h).substr(0, sep));
      if (!role) Fail(ErrorCode::kIo, "unrecognised column '" + h + "'");
      const int idx = std::atoi(h.c_str() + sep + 2);
      if (idx != widths[*role]) Fail(ErrorCode::kIo, "columns of " + h + " out of order");
      ++widths[*role];
      cov.push_back({*role, idx});
    }
  }
  if (t_col < 0 || yf_col < 0) Fail(ErrorCode::kIo, "data.csv lacks t or y_f");
  if ((y0_col < 0) != (y1_col < 0)) Fail(ErrorCode::kIo, "y0 and y1 must come together");

  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = SplitCsvLine(line);
    if (fields.size() != header.size()) {
      Fail(ErrorCode::kIo, "wrong field count on line " + std::to_string(line_no));
    }
    std::vector<double> row(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) row[c] = ParseDouble(fields[c], line_no);
    rows.push_back(std::move(row));
  }
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  std::map<CovariateRole, Eigen::MatrixXd> blocks;
  for (const auto& [role, w] : widths) blocks[role].resize(n, w);
  Eigen::VectorXi t(n);
  Eigen::VectorXd yf(n), y0(n), y1(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::vector<double>& r = rows[i];
    for (std::size_t c = 0, k = 0; c < r.size(); ++c) {
      if (static_cast<int>(c) == t_col || static_cast<int>(c) == yf_col ||
          static_cast<int>(c) == y0_col || static_cast<int>(c) == y1_col) {
        continue;
      }
      blocks[cov[k].role](i, cov[k].index) = r[c];
      ++k;
    }
    if (r[t_col] != 0.0 && r[t_col] != 1.0) Fail(ErrorCode::kIo, "t must be 0 or 1");
    t[i] = static_cast<int>(r[t_col]);
    yf[i] = r[yf_col];
    if (y0_col >= 0) {
      y0[i] = r[y0_col];
      y1[i] = r[y1_col];
    }
  }
  config.n = n;
  std::optional<Eigen::VectorXd> o0, o1;
  if (y0_col >= 0) {
    o0 = std::move(y0);
    o1 = std::move(y1);
  }
  return LabeledDataset(std::move(config), std::move(weights), std::move(blocks),
                        std::move(t), std::move(yf), std::move(o0), std::move(o1),
                        std::nullopt, std::nullopt);
}

}  // namespace causalbench
