// scesep/sce/model.h

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

#ifndef SCESEP_SCE_MODEL_H_
#define SCESEP_SCE_MODEL_H_

#include <string>
#include <utility>
#include <vector>

#include "scesep/autograd/tensor.h"
#include "scesep/nn/lstm.h"

namespace scesep {
namespace sce {

struct ModelConfig {
  int64_t frames = 40;    // T per training sample
  int64_t bins = 257;     // F
  int64_t embed_dim = 40; // E
  int64_t hidden = 600;   // BLSTM output width (2 * per-direction units)
  int64_t layers = 2;
  int64_t batch = 256;    // B
  int64_t speakers = 0;   // C
  // Eq-form switch: false sums the per-bin losses over (t, f) and averages
  // over the batch; true also divides by T*F.
  bool per_bin_mean = false;

  int64_t dir_hidden() const { return hidden / 2; }
};

// The embedding network alone: everything needed at inference.  It has no
// access to the speaker table by construction, which is what keeps the
// separation path speaker-independent.
struct EmbeddingNet {
  nn::BlstmLayer blstm1, blstm2;
  nn::DenseConv dense;
  int64_t bins = 0;
  int64_t embed_dim = 0;

  // features [B,T,F] -> V_i [B,T,F,E]; T may differ from the training T.
  ag::Tensor embed(const ag::Tensor &features) const;
};

// Full training model: embedding net plus one E-vector per known speaker.
struct SceModel {
  ModelConfig config;
  EmbeddingNet net;
  ag::Tensor speaker_table;  // [C x E]

  static SceModel init(const ModelConfig &config, uint64_t seed);

  // Stable (name, tensor) pairs; the order and names are the checkpoint
  // contract.
  std::vector<std::pair<std::string, ag::Tensor>> named_parameters() const;
  std::vector<ag::Tensor> parameters() const;
};

// V_o rows for the speakers of each mix, order preserved: [B x M x E].
ag::Tensor gather_speakers(const ag::Tensor &table,
                           const std::vector<int64_t> &speaker_indices,
                           int64_t batch, int64_t sources);

}  // namespace sce
}  // namespace scesep

#endif  // SCESEP_SCE_MODEL_H_
