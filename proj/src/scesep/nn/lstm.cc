// scesep/nn/lstm.cc

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

#include "scesep/nn/lstm.h"

#include <vector>

#include "scesep/base/error.h"

namespace scesep {
namespace nn {

using ag::Tensor;

std::pair<Tensor, Tensor> lstm_step(const LstmCellParams &p, const Tensor &x_t,
                                    const Tensor &h_prev,
                                    const Tensor &c_prev) {
  const int64_t h = p.hidden;
  SCESEP_CHECK(x_t.rank() == 2 && x_t.shape()[1] == p.input,
               "lstm_step: input " << ag::shape_str(x_t.shape())
                                   << " does not match cell input size "
                                   << p.input);
  SCESEP_CHECK(h_prev.rank() == 2 && h_prev.shape()[1] == h,
               "lstm_step: state " << ag::shape_str(h_prev.shape())
                                   << " does not match hidden size " << h);

  // gates: [B x 4H] in (i, f, g, o) order.
  Tensor gates = ag::add(
      ag::add(ag::matmul_nt(x_t, p.w_x), ag::matmul_nt(h_prev, p.w_h)), p.b);
  Tensor gi = ag::sigmoid(ag::slice(gates, 1, 0, h));
  Tensor gf = ag::sigmoid(ag::slice(gates, 1, h, 2 * h));
  Tensor gg = ag::tanh(ag::slice(gates, 1, 2 * h, 3 * h));
  Tensor go = ag::sigmoid(ag::slice(gates, 1, 3 * h, 4 * h));

  Tensor c = ag::add(ag::mul(gf, c_prev), ag::mul(gi, gg));
  Tensor h_out = ag::mul(go, ag::tanh(c));
  return {h_out, c};
}

ag::Tensor blstm_forward(const BlstmLayer &layer, const Tensor &x) {
  SCESEP_CHECK(x.rank() == 3, "blstm_forward: input must be [B,T,D], got "
                                  << ag::shape_str(x.shape()));
  const int64_t batch = x.shape()[0], steps = x.shape()[1], d = x.shape()[2];
  SCESEP_CHECK(steps >= 1, "blstm_forward: need at least one time step");
  SCESEP_CHECK(d == layer.forward_cell.input,
               "blstm_forward: feature width " << d << " does not match cell "
                                               << layer.forward_cell.input);
  const int64_t h = layer.dir_hidden();

  std::vector<Tensor> frames(steps);
  for (int64_t t = 0; t < steps; ++t)
    frames[t] = ag::reshape(ag::slice(x, 1, t, t + 1), {batch, d});

  std::vector<Tensor> fwd(steps), bwd(steps);
  Tensor hf = Tensor::zeros({batch, h});
  Tensor cf = Tensor::zeros({batch, h});
  for (int64_t t = 0; t < steps; ++t) {
    auto hc = lstm_step(layer.forward_cell, frames[t], hf, cf);
    hf = hc.first;
    cf = hc.second;
    fwd[t] = hf;
  }
  Tensor hb = Tensor::zeros({batch, h});
  Tensor cb = Tensor::zeros({batch, h});
  for (int64_t t = steps - 1; t >= 0; --t) {
    auto hc = lstm_step(layer.backward_cell, frames[t], hb, cb);
    hb = hc.first;
    cb = hc.second;
    bwd[t] = hb;
  }

  std::vector<Tensor> rows(steps);
  for (int64_t t = 0; t < steps; ++t)
    rows[t] = ag::reshape(ag::concat({fwd[t], bwd[t]}, 1), {batch, 1, 2 * h});
  return ag::concat(rows, 1);
}

ag::Tensor dense_forward(const DenseConv &d, const Tensor &r, int64_t f_bins,
                         int64_t embed_dim) {
  SCESEP_CHECK(r.rank() == 3, "dense_forward: input must be [B,T,D], got "
                                  << ag::shape_str(r.shape()));
  SCESEP_CHECK(d.w.rank() == 3 && d.w.shape()[0] == 1,
               "dense_forward: filter must be [1,D,F*E], got "
                   << ag::shape_str(d.w.shape()));
  const int64_t batch = r.shape()[0], steps = r.shape()[1], din = r.shape()[2];
  const int64_t dw = d.w.shape()[1], width = d.w.shape()[2];
  SCESEP_CHECK(din == dw, "dense_forward: input width " << din
                              << " does not match filter width " << dw);
  SCESEP_CHECK(width == f_bins * embed_dim,
               "dense_forward: filter output " << width << " != F*E = "
                                               << f_bins * embed_dim);

  Tensor flat = ag::reshape(r, {batch * steps, din});
  Tensor w2d = ag::reshape(d.w, {din, width});
  Tensor out = ag::add(ag::matmul(flat, w2d), d.bias);
  return ag::reshape(out, {batch, steps, f_bins, embed_dim});
}

}  // namespace nn
}  // namespace scesep
