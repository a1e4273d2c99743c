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

#include <span>
#include <string>

#include "awe/error.hpp"
#include "awe/model/network.hpp"

namespace awe::model {

// Batch reconstruction loss: for each pair, the squared error summed over
// every frame and dimension of the target; averaged over pairs. `outputs[b]`
// must have the shape of `targets[b]` (dim x frames). Accumulates in double.
template <typename Scalar>
double reconstruction_loss(std::span<const Matrix<Scalar>* const> targets,
                           std::span<const Matrix<Scalar>* const> outputs) {
  if (targets.size() != outputs.size()) {
    throw ShapeMismatch("targets and outputs differ in batch size");
  }
  if (targets.empty()) throw ValidationError("empty batch");
  double total = 0.0;
  for (std::size_t b = 0; b < targets.size(); ++b) {
    const auto& t = *targets[b];
    const auto& y = *outputs[b];
    if (t.rows() != y.rows() || t.cols() != y.cols()) {
      throw ShapeMismatch("pair " + std::to_string(b) + ": target is " +
                          std::to_string(t.rows()) + "x" +
                          std::to_string(t.cols()) + ", output is " +
                          std::to_string(y.rows()) + "x" +
                          std::to_string(y.cols()));
    }
    total += (t.template cast<double>() - y.template cast<double>())
                 .squaredNorm();
  }
  return total / static_cast<double>(targets.size());
}

}  // namespace awe::model
