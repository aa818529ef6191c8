// Copyright 2026 The npovm-lab Authors
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
#pragma once

#include <string>
#include <vector>

#include "npovm/lab/config.hpp"

namespace npovm::lab {

struct SweepRow {
  double param_value = 0.0;
  StrategyClass cls = StrategyClass::positive;
  double fi = 0.0;
  double delta_theta = 0.0;
  bool converged = false;
  int restarts_used = 0;
};

/// Points with fi below this are flagged as non-informative.
inline constexpr double kNonInformativeFisher = 1e-10;

struct RunManifest {
  SweepConfig config;
  std::string tool_version;
  std::string started_at;  // UTC, ISO 8601
  double wall_seconds = 0.0;
  std::vector<bool> converged;  // one flag per CSV row, same order
  int warnings = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  RunManifest manifest;
  std::vector<std::string> warnings;
};

/// Runs every (grid point, class) task on a pool of cfg.jobs threads. The seed
/// of a task depends only on the base seed, the point index and the class, so
/// the rows do not depend on the number of workers.
SweepResult run_sweep(const SweepConfig& cfg);

/// run_sweep followed by writing the CSV to cfg.output_path and the manifest
/// next to it. Unwritable destinations throw IoError.
SweepResult run_sweep_to_files(const SweepConfig& cfg);

inline constexpr const char* kCsvHeader = "param_value,class,fi,delta_theta,converged,restarts_used";

std::string format_csv(const std::vector<SweepRow>& rows);
void write_text_file(const std::string& path, const std::string& contents);
std::string manifest_path_for(const std::string& csv_path);

std::string manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const std::string& text);
RunManifest load_manifest(const std::string& path);

}  // namespace npovm::lab
