// Copyright 2026 The AWE Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "awe/run_config.hpp"

namespace awe::pipeline {

struct StageOutcome {
  std::string name;  // corpus, features, train, eval
  std::filesystem::path dir;
  bool executed = false;  // false: reused a completed directory
};

struct SummaryRow {
  std::string method;
  std::string features;
  std::string context;
  std::string language;
  std::string set;  // test or test'
  double ap = 0.0;
};

struct PipelineResult {
  std::vector<StageOutcome> stages;
  std::vector<SummaryRow> rows;
  std::filesystem::path summary_path;
  std::filesystem::path checkpoint_path;  // empty for mean-pool
};

// Runs corpus -> features -> train -> eval. Each stage writes into
// `<output_dir>/<stage>-<hash>`, where the hash covers the stage's own
// settings, its inputs, and the hash of the stage before it. A completed
// directory is reused as is. Mean-pool runs have no train stage.
// Throws ConfigError for an invalid config and StageError otherwise.
PipelineResult run_pipeline(const RunConfig& cfg, std::ostream* log = nullptr);

// Aligned text table followed by `method,features,context,language,set,ap`
// lines.
std::string format_summary(const std::vector<SummaryRow>& rows);

}  // namespace awe::pipeline
