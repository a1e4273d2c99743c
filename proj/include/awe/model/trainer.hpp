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

#include <functional>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "awe/corpus.hpp"
#include "awe/feature_file.hpp"
#include "awe/model/config.hpp"
#include "awe/model/network.hpp"
#include "awe/pairs.hpp"

namespace awe::model {

struct EpochRecord {
  int epoch = 0;  // 1-based
  double loss = 0.0;  // mean batch loss over the epoch
  double dev_ap = std::numeric_limits<double>::quiet_NaN();
};

struct TrainResult {
  AweModel model;  // selected checkpoint
  std::vector<EpochRecord> log;
  int best_epoch = 0;  // 0: initial parameters
};

// Index of the highest dev AP, earliest epoch on ties; NaN entries never win.
// Returns -1 when no entry has a dev AP.
int select_best_epoch(std::span<const EpochRecord> log);

using EpochCallback = std::function<void(const EpochRecord&)>;

// Adam on the mean-over-pairs reconstruction loss. After every epoch the dev
// manifest is embedded and its same-different AP recorded; the returned
// model is the best-by-dev-AP snapshot (the last epoch when `dev` is null).
// Single-threaded: same seed and data give bitwise-identical parameters.
TrainResult train(AweModel model, std::span<const pairs::TrainPair> pairs,
                  const features::FeatureStore& features,
                  const TrainConfig& cfg, const corpus::Manifest* dev,
                  const EpochCallback& on_epoch = {});

// `epoch,loss,dev_ap` lines with a header.
void write_train_log(std::span<const EpochRecord> log, std::ostream& out);

}  // namespace awe::model
