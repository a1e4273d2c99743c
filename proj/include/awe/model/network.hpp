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
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "awe/model/config.hpp"
#include "awe/random.hpp"

namespace awe::model {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct Param {
  std::string name;
  Matrix<Scalar> value;
  Matrix<Scalar> grad;
};

// Correspondence auto-encoder: a stacked (bi)GRU encoder whose final state
// goes through a linear head to the embedding e; a stacked unidirectional GRU
// decoder that receives e at every step; a linear output head back to
// input_dim.
//
// Sequences are column-per-frame matrices (input_dim x frames). Batches are
// zero-padded to the longest member and masked: a padded step leaves the
// recurrent state unchanged, so the forward direction's state at the last
// padded step equals the state at the sequence's true last frame.
template <typename Scalar>
class Network {
 public:
  using Mat = Matrix<Scalar>;
  using Vec = Vector<Scalar>;

  Network(const AweModelConfig& cfg, std::uint64_t seed);

  const AweModelConfig& config() const { return cfg_; }
  std::vector<Param<Scalar>>& params() { return params_; }
  const std::vector<Param<Scalar>>& params() const { return params_; }
  std::size_t num_parameters() const;

  // Inference mode (dropout off).
  Mat encode_batch(std::span<const Mat* const> inputs) const;  // embed x B
  Vec encode(const Mat& x) const;
  Mat decode(const Vec& e, int num_frames) const;  // input_dim x n

  // Mean over pairs of sum_k ||target_k - y_k||^2. Recomputes gradients
  // (zeroing first). Dropout is applied when `dropout_rng` is non-null.
  Scalar forward_backward(std::span<const Mat* const> inputs,
                          std::span<const Mat* const> targets,
                          Rng* dropout_rng);

  // Same loss, no gradients, dropout off.
  Scalar loss(std::span<const Mat* const> inputs,
              std::span<const Mat* const> targets) const;

  void zero_grad();

  template <typename To>
  Network<To> cast() const;

  bool all_finite() const;

 private:
  template <typename>
  friend class Network;
  struct Gru {
    int w_ih, w_hh, b_ih, b_hh;  // indices into params_
    int hidden;
  };
  struct Linear {
    int w, b;
  };
  struct StepCache;
  struct DirTrace;
  struct LayerTrace;
  struct Trace;

  Network() = default;

  int add_param(std::string name, int rows, int cols);
  Gru add_gru(const std::string& prefix, int input, int hidden);
  Linear add_linear(const std::string& prefix, int input, int output);

  std::vector<Mat> run_gru(const Gru& g, const std::vector<Mat>& inputs,
                           const std::vector<Mat>& masks, bool reverse,
                           DirTrace* trace) const;
  std::vector<Mat> backprop_gru(const Gru& g, const std::vector<Mat>& inputs,
                                const std::vector<Mat>& masks, bool reverse,
                                const DirTrace& trace,
                                const std::vector<Mat>& d_out);

  Mat run_encoder(std::span<const Mat* const> inputs, Rng* rng,
                  Trace* trace) const;
  std::vector<Mat> run_decoder(const Mat& e, const std::vector<int>& lengths,
                               Rng* rng, Trace* trace) const;

  AweModelConfig cfg_;
  std::vector<Param<Scalar>> params_;
  std::vector<std::vector<Gru>> encoder_;  // [layer][direction]
  Linear embed_{};
  std::vector<Gru> decoder_;
  Linear output_{};
};

using AweModel = Network<float>;

}  // namespace awe::model
