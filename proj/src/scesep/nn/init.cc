// scesep/nn/init.cc

// Copyright 2026  The scesep authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "scesep/nn/init.h"

#include <cmath>

namespace scesep {
namespace nn {

ag::Tensor glorot_uniform(ag::Shape shape, int64_t fan_in, int64_t fan_out,
                          Rng &rng, bool requires_grad) {
  const double s = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  ag::Tensor t = ag::Tensor::uninit(std::move(shape), requires_grad);
  float *p = t.data();
  for (int64_t i = 0; i < t.numel(); ++i)
    p[i] = static_cast<float>(rng.uniform(-s, s));
  return t;
}

LstmCellParams init_lstm_cell(int64_t input, int64_t hidden, Rng &rng) {
  LstmCellParams p;
  p.input = input;
  p.hidden = hidden;
  p.w_x = glorot_uniform({4 * hidden, input}, input, 4 * hidden, rng);
  p.w_h = glorot_uniform({4 * hidden, hidden}, hidden, 4 * hidden, rng);
  std::vector<float> bias(static_cast<size_t>(4 * hidden), 0.0f);
  // forget gate slice [H, 2H) opens at 1.0
  for (int64_t i = hidden; i < 2 * hidden; ++i) bias[i] = 1.0f;
  p.b = ag::Tensor::from({4 * hidden}, std::move(bias), true);
  return p;
}

BlstmLayer init_blstm(int64_t input, int64_t dir_hidden, Rng &rng) {
  BlstmLayer layer;
  layer.forward_cell = init_lstm_cell(input, dir_hidden, rng);
  layer.backward_cell = init_lstm_cell(input, dir_hidden, rng);
  return layer;
}

DenseConv init_dense(int64_t input, int64_t f_bins, int64_t embed_dim,
                     Rng &rng) {
  DenseConv d;
  const int64_t width = f_bins * embed_dim;
  d.w = glorot_uniform({1, input, width}, input, width, rng);
  d.bias = ag::Tensor::zeros({width}, true);
  return d;
}

}  // namespace nn
}  // namespace scesep
