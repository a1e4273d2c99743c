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

#include "awe/model/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <unordered_map>

#include "awe/error.hpp"
#include "awe/eval.hpp"
#include "awe/model/adam.hpp"
#include "awe/model/embed.hpp"
#include "awe/random.hpp"

namespace awe::model {

int select_best_epoch(std::span<const EpochRecord> log) {
  int best = -1;
  for (std::size_t i = 0; i < log.size(); ++i) {
    if (std::isnan(log[i].dev_ap)) continue;
    if (best < 0 || log[i].dev_ap > log[best].dev_ap) {
      best = static_cast<int>(i);
    }
  }
  return best;
}

TrainResult train(AweModel model, std::span<const pairs::TrainPair> pairs,
                  const features::FeatureStore& features,
                  const TrainConfig& cfg, const corpus::Manifest* dev,
                  const EpochCallback& on_epoch) {
  cfg.validate();

  // Resolve every id up front so a missing file fails before any update.
  std::unordered_map<std::string, Matrix<float>> frames;
  for (const auto& p : pairs) {
    for (const auto* id : {&p.input_id, &p.target_id}) {
      if (!frames.contains(*id)) frames.emplace(*id, to_columns(features.get(*id)));
    }
  }
  if (dev) {
    for (const auto& w : dev->instances) features.get(w.instance_id);
  }

  TrainResult result{model, {}, 0};
  if (cfg.max_epochs == 0 || pairs.empty()) return result;

  Adam<float> adam(cfg, model.params());
  Rng dropout_rng(cfg.seed ^ 0x9E3779B97F4A7C15ULL);
  Rng order_rng(cfg.seed);
  const auto batch = static_cast<std::size_t>(cfg.batch_size);
  const std::size_t window = batch * static_cast<std::size_t>(cfg.bucket_batches);

  std::vector<std::size_t> order(pairs.size());
  std::vector<const Matrix<float>*> inputs, targets;
  double best_ap = -1.0;
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    shuffle(std::span<std::size_t>(order), order_rng);

    // Length bucketing inside windows keeps padding low without losing the
    // shuffle across windows.
    std::vector<std::pair<std::size_t, std::size_t>> batches;  // [begin, end)
    for (std::size_t w = 0; w < order.size(); w += window) {
      const std::size_t w_end = std::min(order.size(), w + window);
      std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(w),
                       order.begin() + static_cast<std::ptrdiff_t>(w_end),
                       [&](std::size_t a, std::size_t b) {
                         return frames.at(pairs[a].input_id).cols() <
                                frames.at(pairs[b].input_id).cols();
                       });
      for (std::size_t b = w; b < w_end; b += batch) {
        batches.emplace_back(b, std::min(w_end, b + batch));
      }
    }
    shuffle(std::span<std::pair<std::size_t, std::size_t>>(batches), order_rng);

    double loss_sum = 0.0;
    for (std::size_t k = 0; k < batches.size(); ++k) {
      inputs.clear();
      targets.clear();
      for (std::size_t i = batches[k].first; i < batches[k].second; ++i) {
        inputs.push_back(&frames.at(pairs[order[i]].input_id));
        targets.push_back(&frames.at(pairs[order[i]].target_id));
      }
      const float loss = model.forward_backward(inputs, targets, &dropout_rng);
      if (!std::isfinite(loss)) {
        throw NonFiniteLoss("non-finite loss at epoch " +
                            std::to_string(epoch) + ", batch " +
                            std::to_string(k) + " (first input '" +
                            pairs[order[batches[k].first]].input_id + "')");
      }
      loss_sum += loss;
      adam.step(model.params());
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.loss = loss_sum / static_cast<double>(batches.size());
    if (dev) {
      auto set = embed_manifest(model, *dev, features);
      eval::EvalOptions opts;
      opts.set_tag = "dev";
      opts.num_threads = 1;
      rec.dev_ap = eval::evaluate(set, opts).ap;
    }
    result.log.push_back(rec);
    if (on_epoch) on_epoch(rec);

    if (!dev) {
      result.model = model;
      result.best_epoch = epoch;
    } else if (rec.dev_ap > best_ap) {
      best_ap = rec.dev_ap;
      result.model = model;
      result.best_epoch = epoch;
    }
  }
  return result;
}

void write_train_log(std::span<const EpochRecord> log, std::ostream& out) {
  out << "epoch,loss,dev_ap\n";
  char buf[96];
  for (const auto& r : log) {
    std::snprintf(buf, sizeof(buf), "%d,%.9g,%.9g\n", r.epoch, r.loss,
                  r.dev_ap);
    out << buf;
  }
}

}  // namespace awe::model
