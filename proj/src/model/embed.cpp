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

#include "awe/model/embed.hpp"

#include <algorithm>

#include "awe/error.hpp"

namespace awe::model {
namespace {

eval::EmbeddingSet labelled_shell(const corpus::Manifest& m, int dim) {
  eval::EmbeddingSet set;
  set.vectors.resize(static_cast<Eigen::Index>(m.size()), dim);
  for (const auto& w : m.instances) {
    set.ids.push_back(w.instance_id);
    set.labels.push_back(w.word);
    set.speakers.push_back(w.speaker_id);
  }
  return set;
}

}  // namespace

Matrix<float> to_columns(const features::FeatureSequence& seq) {
  return seq.data.transpose();
}

eval::EmbeddingSet embed_manifest(const AweModel& model,
                                  const corpus::Manifest& m,
                                  const features::FeatureStore& features,
                                  int batch_size) {
  if (batch_size < 1) throw ValidationError("batch_size must be >= 1");
  auto set = labelled_shell(m, model.config().embed_dim);
  std::vector<Matrix<float>> inputs;
  std::vector<const Matrix<float>*> ptrs;
  for (std::size_t begin = 0; begin < m.size(); begin += batch_size) {
    const std::size_t end = std::min(m.size(), begin + batch_size);
    inputs.clear();
    ptrs.clear();
    for (std::size_t i = begin; i < end; ++i) {
      inputs.push_back(to_columns(features.get(m.instances[i].instance_id)));
    }
    for (const auto& x : inputs) ptrs.push_back(&x);
    Matrix<float> e = model.encode_batch(ptrs);
    for (std::size_t i = begin; i < end; ++i) {
      set.vectors.row(static_cast<Eigen::Index>(i)) =
          e.col(static_cast<Eigen::Index>(i - begin)).transpose();
    }
  }
  return set;
}

eval::EmbeddingSet embed_manifest_mean_pool(
    const corpus::Manifest& m, const features::FeatureStore& features) {
  if (m.empty()) return labelled_shell(m, 0);
  const int dim = features.get(m.instances.front().instance_id).dim();
  auto set = labelled_shell(m, dim);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto& seq = features.get(m.instances[i].instance_id);
    if (seq.dim() != dim) {
      throw DimMismatch("instance '" + m.instances[i].instance_id +
                        "' has feature dim " + std::to_string(seq.dim()));
    }
    set.vectors.row(static_cast<Eigen::Index>(i)) =
        features::mean_pool(seq).transpose();
  }
  return set;
}

}  // namespace awe::model
