// scesep/nn/lstm.h

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

#ifndef SCESEP_NN_LSTM_H_
#define SCESEP_NN_LSTM_H_

#include <utility>

#include "scesep/autograd/ops.h"
#include "scesep/autograd/tensor.h"

namespace scesep {
namespace nn {

// LSTM cell parameters.  Gate order along the 4H axis is fixed as
// (input i, forget f, cell g, output o); this order is part of the
// checkpoint contract.
struct LstmCellParams {
  ag::Tensor w_x;  // [4H x D]
  ag::Tensor w_h;  // [4H x H]
  ag::Tensor b;    // [4H]
  int64_t hidden = 0;  // H
  int64_t input = 0;   // D
};

// One LSTM recurrence step over a batch:
//   i,f,o = sigmoid(.), g = tanh(.), c' = f*c + i*g, h' = o*tanh(c')
// Returns (h', c').
std::pair<ag::Tensor, ag::Tensor> lstm_step(const LstmCellParams &p,
                                            const ag::Tensor &x_t,
                                            const ag::Tensor &h_prev,
                                            const ag::Tensor &c_prev);

// Bidirectional layer: two cells of H_dir units each; outputs are the
// per-step concatenation [forward | backward], total width 2*H_dir.
struct BlstmLayer {
  LstmCellParams forward_cell;
  LstmCellParams backward_cell;
  int64_t dir_hidden() const { return forward_cell.hidden; }
};

// x: [B x T x D] -> [B x T x 2*H_dir].  Initial h and c are zero.
ag::Tensor blstm_forward(const BlstmLayer &layer, const ag::Tensor &x);

// Time-distributed linear output layer, stored in its 1-D convolution
// shape [1 x D_in x F*E] with a length-1 filter.
struct DenseConv {
  ag::Tensor w;     // [1 x D_in x F*E]
  ag::Tensor bias;  // [F*E]
};

// r: [B x T x D_in] -> [B x T x F x E]; affine at every time step, linear.
ag::Tensor dense_forward(const DenseConv &d, const ag::Tensor &r,
                         int64_t f_bins, int64_t embed_dim);

}  // namespace nn
}  // namespace scesep

#endif  // SCESEP_NN_LSTM_H_
