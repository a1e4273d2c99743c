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

#include "awe/corpus.hpp"
#include "awe/eval.hpp"
#include "awe/feature_file.hpp"
#include "awe/model/network.hpp"

namespace awe::model {

// One embedding per instance, manifest order. Throws MissingFeature,
// DimMismatch.
eval::EmbeddingSet embed_manifest(const AweModel& model,
                                  const corpus::Manifest& m,
                                  const features::FeatureStore& features,
                                  int batch_size = 64);

// Training-free baseline: frame average, dim = feature dim.
eval::EmbeddingSet embed_manifest_mean_pool(
    const corpus::Manifest& m, const features::FeatureStore& features);

// Frames as columns, the layout Network expects.
Matrix<float> to_columns(const features::FeatureSequence& seq);

}  // namespace awe::model
