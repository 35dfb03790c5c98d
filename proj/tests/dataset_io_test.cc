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

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "causalbench/dataset_io.h"
#include "causalbench/errors.h"
#include "causalbench/synthgen.h"

namespace causalbench {
namespace {

namespace fs = std::filesystem;

fs::path TempDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("causalbench_" + name);
  fs::remove_all(dir);
  return dir;
}

TEST(DatasetIoTest, RoundTripIsExact) {
  DgpConfig cfg;
  cfg.n = 300;
  cfg.seed = 12;
  cfg.dims = {1, 2, 1, 1, 1, 1, 2};
  const LabeledDataset ds = GenerateDataset(cfg);
  const fs::path dir = TempDir("roundtrip");
  WriteDataset(ds, dir);
  const LabeledDataset back = ReadDataset(dir);
  ASSERT_EQ(back.size(), ds.size());
  for (CovariateRole role : kAllRoles) EXPECT_EQ(back.block(role), ds.block(role));
  EXPECT_EQ(back.t(), ds.t());
  EXPECT_EQ(back.y_factual(), ds.y_factual());
  EXPECT_EQ(back.y0(), ds.y0());
  EXPECT_EQ(back.y1(), ds.y1());
  EXPECT_EQ(back.config().seed, cfg.seed);
  EXPECT_EQ(back.config().dims, cfg.dims);
  EXPECT_EQ(back.weights().c_to_y, ds.weights().c_to_y);
  fs::remove_all(dir);
}

TEST(DatasetIoTest, MissingDirectoryIsIoError) {
  try {
    ReadDataset(TempDir("does_not_exist"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(DatasetIoTest, MalformedCsvIsIoError) {
  DgpConfig cfg;
  cfg.n = 10;
  const fs::path dir = TempDir("malformed");
  WriteDataset(GenerateDataset(cfg), dir);
  std::ofstream(dir / "data.csv", std::ios::app) << "1,2,3\n";
  try {
    ReadDataset(dir);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
  fs::remove_all(dir);
}

}  // namespace
}  // namespace causalbench
