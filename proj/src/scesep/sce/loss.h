// scesep/sce/loss.h

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

#ifndef SCESEP_SCE_LOSS_H_
#define SCESEP_SCE_LOSS_H_

#include "scesep/corpus/mix.h"
#include "scesep/nn/adam.h"
#include "scesep/sce/model.h"

namespace scesep {
namespace sce {

// Source-contrastive loss.
//   D[b,t,f,m] = <vi[b,t,f,:], vo[b,m,:]>
//   loss = (1/B) * sum_{b,t,f} (-1/M) * sum_m log sigmoid(Y * D)
// evaluated through the stable identity log sigmoid(z) = -softplus(-z).
// Y must contain only +1/-1.  With per_bin_mean the (t, f) sum becomes a
// mean, which only rescales the gradient.
ag::Tensor sce_loss(const ag::Tensor &vi, const ag::Tensor &vo,
                    const ag::Tensor &y, bool per_bin_mean = false);

// One optimization step on a batch: forward, loss, backward, global-norm
// clip, Adam update over every parameter including the speaker table.
// Returns the pre-step loss.  A non-finite loss throws before any
// parameter is touched.
float train_step(const SceModel &model, const corpus::Batch &batch,
                 nn::Adam &adam, float clip_norm);

// Loss of a batch without gradients or updates.
float eval_loss(const SceModel &model, const corpus::Batch &batch);

}  // namespace sce
}  // namespace scesep

#endif  // SCESEP_SCE_LOSS_H_
