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

#include <cstdint>
#include <string>

namespace awe::model {

struct AweModelConfig {
  int input_dim = 60;
  int enc_layers = 4;
  bool bidirectional = true;
  int hidden_dim = 256;
  int embed_dim = 128;
  int dec_layers = 4;
  double dropout = 0.2;

  void validate() const;
  bool operator==(const AweModelConfig&) const = default;
};

struct TrainConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int batch_size = 256;
  int max_epochs = 100;
  std::uint64_t seed = 0;
  // Pairs are sorted by input length within windows of this many batches.
  int bucket_batches = 8;

  void validate() const;
};

}  // namespace awe::model
