// scesep/sce/loss.cc

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

#include "scesep/sce/loss.h"

#include <cmath>

#include "scesep/autograd/ops.h"
#include "scesep/base/error.h"

namespace scesep {
namespace sce {

ag::Tensor sce_loss(const ag::Tensor &vi, const ag::Tensor &vo,
                    const ag::Tensor &y, bool per_bin_mean) {
  SCESEP_CHECK(vi.rank() == 4, "sce_loss: vi must be [B,T,F,E], got "
                                   << ag::shape_str(vi.shape()));
  SCESEP_CHECK(vo.rank() == 3, "sce_loss: vo must be [B,M,E], got "
                                   << ag::shape_str(vo.shape()));
  SCESEP_CHECK(y.rank() == 4, "sce_loss: y must be [B,T,F,M], got "
                                  << ag::shape_str(y.shape()));
  const int64_t b = vi.shape()[0], t = vi.shape()[1], f = vi.shape()[2];
  const int64_t m = vo.shape()[1];
  SCESEP_CHECK(y.shape()[0] == b && y.shape()[1] == t && y.shape()[2] == f &&
                   y.shape()[3] == m,
               "sce_loss: label shape " << ag::shape_str(y.shape())
                                        << " does not match vi "
                                        << ag::shape_str(vi.shape())
                                        << " and vo "
                                        << ag::shape_str(vo.shape()));
  const float *py = y.data();
  for (int64_t i = 0; i < y.numel(); ++i)
    SCESEP_CHECK(py[i] == 1.0f || py[i] == -1.0f,
                 "sce_loss: labels must be +1 or -1, got " << py[i]
                                                           << " at index "
                                                           << i);

  ag::Tensor d = ag::pairwise_dot(vi, vo);          // [B,T,F,M]
  ag::Tensor z = ag::mul(d, y);                     // Y * D
  ag::Tensor nl = ag::softplus(ag::negate(z));      // -log sigmoid(Y * D)
  double scale = 1.0 / (static_cast<double>(b) * m);
  if (per_bin_mean) scale /= static_cast<double>(t * f);
  return ag::mul(ag::sum(nl), ag::Tensor::scalar(static_cast<float>(scale)));
}

namespace {

ag::Tensor forward_loss(const SceModel &model, const corpus::Batch &batch) {
  SCESEP_CHECK(batch.bins == model.config.bins,
               "train_step: batch bins " << batch.bins
                                         << " do not match model F="
                                         << model.config.bins);
  ag::Tensor features = ag::Tensor::from(
      {batch.batch, batch.frames, batch.bins}, batch.features);
  ag::Tensor labels = ag::Tensor::from(
      {batch.batch, batch.frames, batch.bins, batch.sources}, batch.labels);
  ag::Tensor vi = model.net.embed(features);
  ag::Tensor vo = gather_speakers(model.speaker_table, batch.speaker_indices,
                                  batch.batch, batch.sources);
  return sce_loss(vi, vo, labels, model.config.per_bin_mean);
}

}  // namespace

float train_step(const SceModel &model, const corpus::Batch &batch,
                 nn::Adam &adam, float clip_norm) {
  ag::Tape tape;
  ag::Tensor loss = forward_loss(model, batch);
  const float value = loss.item();
  SCESEP_CHECK(std::isfinite(value),
               "train_step: non-finite loss " << value
                                              << "; parameters left "
                                                 "untouched");
  tape.backward(loss);
  std::vector<ag::Tensor> params = model.parameters();
  nn::clip_global_norm(params, clip_norm);
  adam.step();
  return value;
}

float eval_loss(const SceModel &model, const corpus::Batch &batch) {
  return forward_loss(model, batch).item();
}

}  // namespace sce
}  // namespace scesep
