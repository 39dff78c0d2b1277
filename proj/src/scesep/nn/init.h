// scesep/nn/init.h

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

#ifndef SCESEP_NN_INIT_H_
#define SCESEP_NN_INIT_H_

#include "scesep/autograd/tensor.h"
#include "scesep/base/rng.h"
#include "scesep/nn/lstm.h"

namespace scesep {
namespace nn {

// Uniform(-s, s) with s = sqrt(6 / (fan_in + fan_out)).
ag::Tensor glorot_uniform(ag::Shape shape, int64_t fan_in, int64_t fan_out,
                          Rng &rng, bool requires_grad = true);

// LSTM cell init: glorot weights, zero biases except the forget-gate
// slice which starts at 1.0.
LstmCellParams init_lstm_cell(int64_t input, int64_t hidden, Rng &rng);

BlstmLayer init_blstm(int64_t input, int64_t dir_hidden, Rng &rng);

DenseConv init_dense(int64_t input, int64_t f_bins, int64_t embed_dim,
                     Rng &rng);

}  // namespace nn
}  // namespace scesep

#endif  // SCESEP_NN_INIT_H_
