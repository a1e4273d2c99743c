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

#include "awe/model/network.hpp"

#include <algorithm>
#include <cmath>

#include "awe/error.hpp"
#include "awe/model/loss.hpp"

namespace awe::model {

void AweModelConfig::validate() const {
  if (input_dim <= 0 || hidden_dim <= 0 || embed_dim <= 0 || enc_layers <= 0 ||
      dec_layers <= 0) {
    throw ValidationError("model dimensions and layer counts must be positive");
  }
  if (!(dropout >= 0.0 && dropout < 1.0)) {
    throw ValidationError("dropout must lie in [0, 1)");
  }
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0)) {
    throw ValidationError("learning_rate must be positive");
  }
  if (batch_size < 1) throw ValidationError("batch_size must be >= 1");
  if (max_epochs < 0) throw ValidationError("max_epochs must be >= 0");
  if (bucket_batches < 1) throw ValidationError("bucket_batches must be >= 1");
  if (!(beta1 >= 0.0 && beta1 < 1.0 && beta2 >= 0.0 && beta2 < 1.0 &&
        epsilon > 0.0)) {
    throw ValidationError("invalid Adam hyper-parameters");
  }
}

template <typename Scalar>
struct Network<Scalar>::StepCache {
  Mat h_prev, r, z, n, hn;
};

template <typename Scalar>
struct Network<Scalar>::DirTrace {
  std::vector<StepCache> steps;  // indexed by time
};

template <typename Scalar>
struct Network<Scalar>::LayerTrace {
  std::vector<Mat> inputs;  // after dropout
  std::vector<Mat> drop;    // dropout scale masks; empty when off
  DirTrace dir[2];
};

template <typename Scalar>
struct Network<Scalar>::Trace {
  std::vector<Mat> enc_masks;
  std::vector<LayerTrace> enc;
  Mat final_state;
  std::vector<Mat> dec_masks;
  std::vector<LayerTrace> dec;
  std::vector<Mat> dec_top;
};

namespace {

template <typename Mat>
std::vector<Mat> length_masks(const std::vector<int>& lengths, int steps) {
  const auto batch = static_cast<Eigen::Index>(lengths.size());
  std::vector<Mat> masks(steps, Mat::Zero(1, batch));
  for (Eigen::Index b = 0; b < batch; ++b) {
    for (int t = 0; t < lengths[b]; ++t) masks[t](0, b) = 1;
  }
  return masks;
}

template <typename Mat>
Mat sigmoid(const Mat& x) {
  using Scalar = typename Mat::Scalar;
  return (Scalar(1) / (Scalar(1) + (-x.array()).exp())).matrix();
}

template <typename Mat>
void apply_dropout(std::vector<Mat>& inputs, std::vector<Mat>& drop,
                   double p, Rng& rng) {
  using Scalar = typename Mat::Scalar;
  const Scalar keep_scale = static_cast<Scalar>(1.0 / (1.0 - p));
  drop.resize(inputs.size());
  for (std::size_t t = 0; t < inputs.size(); ++t) {
    Mat mask(inputs[t].rows(), inputs[t].cols());
    for (Eigen::Index j = 0; j < mask.cols(); ++j) {
      for (Eigen::Index i = 0; i < mask.rows(); ++i) {
        mask(i, j) = uniform01(rng) < p ? Scalar(0) : keep_scale;
      }
    }
    inputs[t].array() *= mask.array();
    drop[t] = std::move(mask);
  }
}

}  // namespace

template <typename Scalar>
int Network<Scalar>::add_param(std::string name, int rows, int cols) {
  Param<Scalar> p;
  p.name = std::move(name);
  p.value = Mat::Zero(rows, cols);
  p.grad = Mat::Zero(rows, cols);
  params_.push_back(std::move(p));
  return static_cast<int>(params_.size()) - 1;
}

template <typename Scalar>
typename Network<Scalar>::Gru Network<Scalar>::add_gru(
    const std::string& prefix, int input, int hidden) {
  Gru g;
  g.w_ih = add_param(prefix + ".w_ih", 3 * hidden, input);
  g.w_hh = add_param(prefix + ".w_hh", 3 * hidden, hidden);
  g.b_ih = add_param(prefix + ".b_ih", 3 * hidden, 1);
  g.b_hh = add_param(prefix + ".b_hh", 3 * hidden, 1);
  g.hidden = hidden;
  return g;
}

template <typename Scalar>
typename Network<Scalar>::Linear Network<Scalar>::add_linear(
    const std::string& prefix, int input, int output) {
  Linear l;
  l.w = add_param(prefix + ".w", output, input);
  l.b = add_param(prefix + ".b", output, 1);
  return l;
}

template <typename Scalar>
Network<Scalar>::Network(const AweModelConfig& cfg, std::uint64_t seed)
    : cfg_(cfg) {
  cfg_.validate();
  const int h = cfg_.hidden_dim;
  const int dirs = cfg_.bidirectional ? 2 : 1;
  std::vector<double> bounds;  // uniform init half-width per parameter

  auto note_gru = [&](const Gru&) {
    const double k = 1.0 / std::sqrt(static_cast<double>(h));
    bounds.insert(bounds.end(), 4, k);
  };
  auto note_linear = [&](int fan_in) {
    const double k = 1.0 / std::sqrt(static_cast<double>(fan_in));
    bounds.insert(bounds.end(), 2, k);
  };

  encoder_.resize(cfg_.enc_layers);
  for (int l = 0; l < cfg_.enc_layers; ++l) {
    const int in = l == 0 ? cfg_.input_dim : h * dirs;
    for (int d = 0; d < dirs; ++d) {
      encoder_[l].push_back(add_gru("enc.l" + std::to_string(l) +
                                        (d == 0 ? ".fwd" : ".bwd"),
                                    in, h));
      note_gru(encoder_[l].back());
    }
  }
  embed_ = add_linear("embed", h * dirs, cfg_.embed_dim);
  note_linear(h * dirs);
  for (int l = 0; l < cfg_.dec_layers; ++l) {
    const int in = l == 0 ? cfg_.embed_dim : h;
    decoder_.push_back(add_gru("dec.l" + std::to_string(l), in, h));
    note_gru(decoder_.back());
  }
  output_ = add_linear("out", h, cfg_.input_dim);
  note_linear(h);

  // Drawn in double so float and double networks share initial values.
  Rng rng(seed);
  for (std::size_t i = 0; i < params_.size(); ++i) {
    auto& v = params_[i].value;
    for (Eigen::Index c = 0; c < v.cols(); ++c) {
      for (Eigen::Index r = 0; r < v.rows(); ++r) {
        v(r, c) = static_cast<Scalar>(uniform(rng, -bounds[i], bounds[i]));
      }
    }
  }
}

template <typename Scalar>
std::size_t Network<Scalar>::num_parameters() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += static_cast<std::size_t>(p.value.size());
  return n;
}

template <typename Scalar>
void Network<Scalar>::zero_grad() {
  for (auto& p : params_) p.grad.setZero();
}

template <typename Scalar>
bool Network<Scalar>::all_finite() const {
  return std::all_of(params_.begin(), params_.end(),
                     [](const auto& p) { return p.value.allFinite(); });
}

template <typename Scalar>
template <typename To>
Network<To> Network<Scalar>::cast() const {
  Network<To> out;
  out.cfg_ = cfg_;
  for (const auto& p : params_) {
    Param<To> q;
    q.name = p.name;
    q.value = p.value.template cast<To>();
    q.grad = Matrix<To>::Zero(p.value.rows(), p.value.cols());
    out.params_.push_back(std::move(q));
  }
  for (const auto& layer : encoder_) {
    auto& dst = out.encoder_.emplace_back();
    for (const auto& g : layer) {
      dst.push_back({g.w_ih, g.w_hh, g.b_ih, g.b_hh, g.hidden});
    }
  }
  out.embed_ = {embed_.w, embed_.b};
  for (const auto& g : decoder_) {
    out.decoder_.push_back({g.w_ih, g.w_hh, g.b_ih, g.b_hh, g.hidden});
  }
  out.output_ = {output_.w, output_.b};
  return out;
}

template <typename Scalar>
std::vector<typename Network<Scalar>::Mat> Network<Scalar>::run_gru(
    const Gru& g, const std::vector<Mat>& inputs, const std::vector<Mat>& masks,
    bool reverse, DirTrace* trace) const {
  const Mat& w_ih = params_[g.w_ih].value;
  const Mat& w_hh = params_[g.w_hh].value;
  const auto b_ih = params_[g.b_ih].value.col(0);
  const auto b_hh = params_[g.b_hh].value.col(0);
  const int steps = static_cast<int>(inputs.size());
  const int hid = g.hidden;
  const Eigen::Index batch = inputs.empty() ? 0 : inputs[0].cols();

  std::vector<Mat> out(steps);
  if (trace) trace->steps.resize(steps);
  Mat h = Mat::Zero(hid, batch);
  Mat gi(3 * hid, batch), gh(3 * hid, batch);
  for (int s = 0; s < steps; ++s) {
    const int t = reverse ? steps - 1 - s : s;
    gi.noalias() = w_ih * inputs[t];
    gi.colwise() += b_ih;
    gh.noalias() = w_hh * h;
    gh.colwise() += b_hh;
    Mat r = sigmoid<Mat>(gi.topRows(hid) + gh.topRows(hid));
    Mat z = sigmoid<Mat>(gi.middleRows(hid, hid) + gh.middleRows(hid, hid));
    Mat n = (gi.bottomRows(hid).array() +
             r.array() * gh.bottomRows(hid).array())
                .tanh()
                .matrix();
    Mat h_new = ((Scalar(1) - z.array()) * n.array() + z.array() * h.array()).matrix();
    Mat h_next =
        h + ((h_new - h).array().rowwise() * masks[t].row(0).array()).matrix();
    if (trace) {
      auto& c = trace->steps[t];
      c.h_prev = std::move(h);
      c.r = std::move(r);
      c.z = std::move(z);
      c.n = std::move(n);
      c.hn = gh.bottomRows(hid);
    }
    h = std::move(h_next);
    out[t] = h;
  }
  return out;
}

template <typename Scalar>
std::vector<typename Network<Scalar>::Mat> Network<Scalar>::backprop_gru(
    const Gru& g, const std::vector<Mat>& inputs, const std::vector<Mat>& masks,
    bool reverse, const DirTrace& trace, const std::vector<Mat>& d_out) {
  const Mat& w_ih = params_[g.w_ih].value;
  const Mat& w_hh = params_[g.w_hh].value;
  Mat& gw_ih = params_[g.w_ih].grad;
  Mat& gw_hh = params_[g.w_hh].grad;
  Mat& gb_ih = params_[g.b_ih].grad;
  Mat& gb_hh = params_[g.b_hh].grad;
  const int steps = static_cast<int>(inputs.size());
  const int hid = g.hidden;
  const Eigen::Index batch = inputs.empty() ? 0 : inputs[0].cols();

  std::vector<Mat> d_in(steps);
  Mat d_next = Mat::Zero(hid, batch);
  Mat da_i(3 * hid, batch), da_h(3 * hid, batch);
  for (int s = steps - 1; s >= 0; --s) {
    const int t = reverse ? steps - 1 - s : s;
    const auto& c = trace.steps[t];
    Mat dh = d_next;
    if (d_out[t].size() != 0) dh += d_out[t];

    const auto m = masks[t].row(0).array();
    Mat d_hat = (dh.array().rowwise() * m).matrix();
    Mat d_prev = dh - d_hat;

    const auto z = c.z.array();
    const auto n = c.n.array();
    const auto r = c.r.array();
    const auto dn = d_hat.array() * (Scalar(1) - z);
    const auto dz = d_hat.array() * (c.h_prev.array() - n);
    d_prev.array() += d_hat.array() * z;
    const auto dn_pre = (dn * (Scalar(1) - n * n)).eval();

    da_i.topRows(hid) = (dn_pre * c.hn.array() * r * (Scalar(1) - r)).matrix();
    da_i.middleRows(hid, hid) = (dz * z * (Scalar(1) - z)).matrix();
    da_i.bottomRows(hid) = dn_pre.matrix();
    da_h.topRows(2 * hid) = da_i.topRows(2 * hid);
    da_h.bottomRows(hid) = (dn_pre * r).matrix();

    gw_ih.noalias() += da_i * inputs[t].transpose();
    gb_ih += da_i.rowwise().sum();
    d_in[t].noalias() = w_ih.transpose() * da_i;
    gw_hh.noalias() += da_h * c.h_prev.transpose();
    gb_hh += da_h.rowwise().sum();
    d_prev.noalias() += w_hh.transpose() * da_h;
    d_next = std::move(d_prev);
  }
  return d_in;
}

template <typename Scalar>
typename Network<Scalar>::Mat Network<Scalar>::run_encoder(
    std::span<const Mat* const> inputs, Rng* rng, Trace* trace) const {
  const auto batch = static_cast<Eigen::Index>(inputs.size());
  if (batch == 0) throw ValidationError("empty batch");
  std::vector<int> lengths;
  for (const Mat* x : inputs) {
    if (x->rows() != cfg_.input_dim) {
      throw DimMismatch("input has dim " + std::to_string(x->rows()) +
                        ", model expects " + std::to_string(cfg_.input_dim));
    }
    if (x->cols() < 1) throw ValidationError("input sequence has no frames");
    lengths.push_back(static_cast<int>(x->cols()));
  }
  const int steps = *std::max_element(lengths.begin(), lengths.end());
  auto masks = length_masks<Mat>(lengths, steps);

  std::vector<Mat> layer_in(steps, Mat::Zero(cfg_.input_dim, batch));
  for (Eigen::Index b = 0; b < batch; ++b) {
    for (int t = 0; t < lengths[b]; ++t) layer_in[t].col(b) = inputs[b]->col(t);
  }

  const int dirs = cfg_.bidirectional ? 2 : 1;
  const int hid = cfg_.hidden_dim;
  std::vector<Mat> out[2];
  if (trace) trace->enc.resize(cfg_.enc_layers);
  for (int l = 0; l < cfg_.enc_layers; ++l) {
    LayerTrace* lt = trace ? &trace->enc[l] : nullptr;
    if (l > 0) {
      for (int t = 0; t < steps; ++t) {
        if (dirs == 2) {
          layer_in[t].resize(2 * hid, batch);
          layer_in[t] << out[0][t], out[1][t];
        } else {
          layer_in[t] = out[0][t];
        }
      }
      if (rng && cfg_.dropout > 0.0) {
        std::vector<Mat> drop;
        apply_dropout(layer_in, drop, cfg_.dropout, *rng);
        if (lt) lt->drop = std::move(drop);
      }
    }
    for (int d = 0; d < dirs; ++d) {
      out[d] = run_gru(encoder_[l][d], layer_in, masks, d == 1,
                       lt ? &lt->dir[d] : nullptr);
    }
    if (lt) lt->inputs = layer_in;
  }

  Mat state(hid * dirs, batch);
  state.topRows(hid) = out[0][steps - 1];
  if (dirs == 2) state.bottomRows(hid) = out[1][0];

  Mat e = params_[embed_.w].value * state;
  e.colwise() += params_[embed_.b].value.col(0);
  if (trace) {
    trace->enc_masks = std::move(masks);
    trace->final_state = std::move(state);
  }
  return e;
}

template <typename Scalar>
std::vector<typename Network<Scalar>::Mat> Network<Scalar>::run_decoder(
    const Mat& e, const std::vector<int>& lengths, Rng* rng,
    Trace* trace) const {
  const Eigen::Index batch = e.cols();
  const int steps = *std::max_element(lengths.begin(), lengths.end());
  auto masks = length_masks<Mat>(lengths, steps);

  std::vector<Mat> layer_in(steps, e);
  std::vector<Mat> out;
  if (trace) trace->dec.resize(cfg_.dec_layers);
  for (int l = 0; l < cfg_.dec_layers; ++l) {
    LayerTrace* lt = trace ? &trace->dec[l] : nullptr;
    if (l > 0) {
      layer_in = std::move(out);
      if (rng && cfg_.dropout > 0.0) {
        std::vector<Mat> drop;
        apply_dropout(layer_in, drop, cfg_.dropout, *rng);
        if (lt) lt->drop = std::move(drop);
      }
    }
    out = run_gru(decoder_[l], layer_in, masks, false,
                  lt ? &lt->dir[0] : nullptr);
    if (lt) lt->inputs = layer_in;
  }

  const Mat& w = params_[output_.w].value;
  const auto b = params_[output_.b].value.col(0);
  std::vector<Mat> y(steps);
  for (int t = 0; t < steps; ++t) {
    y[t].noalias() = w * out[t];
    y[t].colwise() += b;
  }
  (void)batch;
  if (trace) {
    trace->dec_masks = std::move(masks);
    trace->dec_top = std::move(out);
  }
  return y;
}

template <typename Scalar>
typename Network<Scalar>::Mat Network<Scalar>::encode_batch(
    std::span<const Mat* const> inputs) const {
  return run_encoder(inputs, nullptr, nullptr);
}

template <typename Scalar>
typename Network<Scalar>::Vec Network<Scalar>::encode(const Mat& x) const {
  const Mat* one[] = {&x};
  return run_encoder(one, nullptr, nullptr).col(0);
}

template <typename Scalar>
typename Network<Scalar>::Mat Network<Scalar>::decode(const Vec& e,
                                                      int num_frames) const {
  if (num_frames < 1) throw ValidationError("decode needs num_frames >= 1");
  if (e.size() != cfg_.embed_dim) {
    throw DimMismatch("embedding has dim " + std::to_string(e.size()) +
                      ", model expects " + std::to_string(cfg_.embed_dim));
  }
  Mat em = e;
  auto y = run_decoder(em, {num_frames}, nullptr, nullptr);
  Mat out(cfg_.input_dim, num_frames);
  for (int t = 0; t < num_frames; ++t) out.col(t) = y[t].col(0);
  return out;
}

namespace {

template <typename Mat>
std::vector<int> target_lengths(std::span<const Mat* const> inputs,
                                std::span<const Mat* const> targets,
                                int input_dim) {
  if (inputs.size() != targets.size()) {
    throw ShapeMismatch("inputs and targets differ in batch size");
  }
  std::vector<int> lengths;
  for (const Mat* y : targets) {
    if (y->rows() != input_dim) {
      throw DimMismatch("target has dim " + std::to_string(y->rows()) +
                        ", model expects " + std::to_string(input_dim));
    }
    if (y->cols() < 1) throw ValidationError("target sequence has no frames");
    lengths.push_back(static_cast<int>(y->cols()));
  }
  return lengths;
}

}  // namespace

template <typename Scalar>
Scalar Network<Scalar>::loss(std::span<const Mat* const> inputs,
                             std::span<const Mat* const> targets) const {
  auto lengths = target_lengths<Mat>(inputs, targets, cfg_.input_dim);
  Mat e = run_encoder(inputs, nullptr, nullptr);
  auto y = run_decoder(e, lengths, nullptr, nullptr);
  std::vector<Mat> outputs(targets.size());
  std::vector<const Mat*> output_ptrs;
  for (std::size_t b = 0; b < targets.size(); ++b) {
    outputs[b].resize(cfg_.input_dim, lengths[b]);
    for (int t = 0; t < lengths[b]; ++t) {
      outputs[b].col(t) = y[t].col(static_cast<Eigen::Index>(b));
    }
    output_ptrs.push_back(&outputs[b]);
  }
  return static_cast<Scalar>(
      reconstruction_loss<Scalar>(targets, output_ptrs));
}

template <typename Scalar>
Scalar Network<Scalar>::forward_backward(std::span<const Mat* const> inputs,
                                         std::span<const Mat* const> targets,
                                         Rng* dropout_rng) {
  auto lengths = target_lengths<Mat>(inputs, targets, cfg_.input_dim);
  zero_grad();
  Trace tr;
  Mat e = run_encoder(inputs, dropout_rng, &tr);
  auto y = run_decoder(e, lengths, dropout_rng, &tr);

  const auto batch = static_cast<Eigen::Index>(targets.size());
  const int dec_steps = static_cast<int>(y.size());
  const Scalar scale = Scalar(2) / static_cast<Scalar>(batch);
  double total = 0.0;
  std::vector<Mat> d_top(dec_steps);
  {
    const Mat& w_out = params_[output_.w].value;
    Mat& gw_out = params_[output_.w].grad;
    Mat& gb_out = params_[output_.b].grad;
    for (int t = 0; t < dec_steps; ++t) {
      Mat dy = Mat::Zero(cfg_.input_dim, batch);
      for (Eigen::Index b = 0; b < batch; ++b) {
        if (t >= lengths[b]) continue;
        auto diff = (y[t].col(b) - targets[b]->col(t)).eval();
        total += static_cast<double>(diff.squaredNorm());
        dy.col(b) = scale * diff;
      }
      gw_out.noalias() += dy * tr.dec_top[t].transpose();
      gb_out += dy.rowwise().sum();
      d_top[t].noalias() = w_out.transpose() * dy;
    }
  }

  Mat de = Mat::Zero(cfg_.embed_dim, batch);
  for (int l = cfg_.dec_layers - 1; l >= 0; --l) {
    auto& lt = tr.dec[l];
    auto d_in = backprop_gru(decoder_[l], lt.inputs, tr.dec_masks, false,
                             lt.dir[0], d_top);
    if (l > 0) {
      if (!lt.drop.empty()) {
        for (int t = 0; t < dec_steps; ++t) d_in[t].array() *= lt.drop[t].array();
      }
      d_top = std::move(d_in);
    } else {
      for (const auto& d : d_in) de += d;
    }
  }

  params_[embed_.w].grad.noalias() += de * tr.final_state.transpose();
  params_[embed_.b].grad += de.rowwise().sum();
  Mat d_state = params_[embed_.w].value.transpose() * de;

  const int hid = cfg_.hidden_dim;
  const int dirs = cfg_.bidirectional ? 2 : 1;
  const int enc_steps = static_cast<int>(tr.enc_masks.size());
  std::vector<Mat> d_out[2];
  d_out[0].assign(enc_steps, Mat());
  d_out[0][enc_steps - 1] = d_state.topRows(hid);
  if (dirs == 2) {
    d_out[1].assign(enc_steps, Mat());
    d_out[1][0] = d_state.bottomRows(hid);
  }
  for (int l = cfg_.enc_layers - 1; l >= 0; --l) {
    auto& lt = tr.enc[l];
    std::vector<Mat> d_in = backprop_gru(encoder_[l][0], lt.inputs,
                                         tr.enc_masks, false, lt.dir[0],
                                         d_out[0]);
    if (dirs == 2) {
      auto d_in_bwd = backprop_gru(encoder_[l][1], lt.inputs, tr.enc_masks,
                                   true, lt.dir[1], d_out[1]);
      for (int t = 0; t < enc_steps; ++t) d_in[t] += d_in_bwd[t];
    }
    if (l == 0) break;
    for (int t = 0; t < enc_steps; ++t) {
      if (!lt.drop.empty()) d_in[t].array() *= lt.drop[t].array();
      d_out[0][t] = d_in[t].topRows(hid);
      if (dirs == 2) d_out[1][t] = d_in[t].bottomRows(hid);
    }
  }
  return static_cast<Scalar>(total / static_cast<double>(batch));
}

template class Network<float>;
template class Network<double>;
template Network<double> Network<float>::cast<double>() const;
template Network<float> Network<double>::cast<float>() const;
template Network<float> Network<float>::cast<float>() const;
template Network<double> Network<double>::cast<double>() const;

}  // namespace awe::model
