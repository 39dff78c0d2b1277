// scesep/sce/model.cc

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

#include "scesep/sce/model.h"

#include "scesep/autograd/ops.h"
#include "scesep/base/error.h"
#include "scesep/base/rng.h"
#include "scesep/nn/init.h"

namespace scesep {
namespace sce {

ag::Tensor EmbeddingNet::embed(const ag::Tensor &features) const {
  SCESEP_CHECK(features.rank() == 3,
               "embed: features must be [B,T,F], got "
                   << ag::shape_str(features.shape()));
  SCESEP_CHECK(features.shape()[2] == bins,
               "embed: feature bins " << features.shape()[2]
                                      << " do not match the dense layer's F="
                                      << bins);
  const int64_t b = features.shape()[0], t = features.shape()[1];
  ag::Tensor r1 = nn::blstm_forward(blstm1, features);
  ag::Tensor r2 = nn::blstm_forward(blstm2, r1);
  ag::Tensor vi = nn::dense_forward(dense, r2, bins, embed_dim);
  SCESEP_CHECK(vi.shape()[0] == b && vi.shape()[1] == t, "embed: shape bug");
  return vi;
}

SceModel SceModel::init(const ModelConfig &config, uint64_t seed) {
  SCESEP_CHECK(config.layers == 2, "SceModel: exactly two BLSTM layers, got "
                                       << config.layers);
  SCESEP_CHECK(config.hidden % 2 == 0,
               "SceModel: hidden width must be even (two directions), got "
                   << config.hidden);
  SCESEP_CHECK(config.speakers > 0, "SceModel: speaker count must be set");

  Rng rng(seed);
  SceModel m;
  m.config = config;
  const int64_t dir = config.dir_hidden();
  m.net.bins = config.bins;
  m.net.embed_dim = config.embed_dim;
  m.net.blstm1 = nn::init_blstm(config.bins, dir, rng);
  m.net.blstm2 = nn::init_blstm(config.hidden, dir, rng);
  m.net.dense =
      nn::init_dense(config.hidden, config.bins, config.embed_dim, rng);
  m.speaker_table = nn::glorot_uniform({config.speakers, config.embed_dim},
                                       config.embed_dim, config.speakers, rng);
  return m;
}

std::vector<std::pair<std::string, ag::Tensor>> SceModel::named_parameters()
    const {
  std::vector<std::pair<std::string, ag::Tensor>> out;
  auto cell = [&](const std::string &prefix, const nn::LstmCellParams &p) {
    out.emplace_back(prefix + ".w_x", p.w_x);
    out.emplace_back(prefix + ".w_h", p.w_h);
    out.emplace_back(prefix + ".b", p.b);
  };
  cell("blstm1.fw", net.blstm1.forward_cell);
  cell("blstm1.bw", net.blstm1.backward_cell);
  cell("blstm2.fw", net.blstm2.forward_cell);
  cell("blstm2.bw", net.blstm2.backward_cell);
  out.emplace_back("dense.w", net.dense.w);
  out.emplace_back("dense.b", net.dense.bias);
  out.emplace_back("speakers.table", speaker_table);
  return out;
}

std::vector<ag::Tensor> SceModel::parameters() const {
  std::vector<ag::Tensor> out;
  for (auto &kv : named_parameters()) out.push_back(kv.second);
  return out;
}

ag::Tensor gather_speakers(const ag::Tensor &table,
                           const std::vector<int64_t> &speaker_indices,
                           int64_t batch, int64_t sources) {
  SCESEP_CHECK(static_cast<int64_t>(speaker_indices.size()) ==
                   batch * sources,
               "gather_speakers: got " << speaker_indices.size()
                                       << " indices, expected "
                                       << batch * sources);
  ag::Tensor flat = ag::gather_rows(table, speaker_indices);
  return ag::reshape(flat, {batch, sources, table.shape()[1]});
}

}  // namespace sce
}  // namespace scesep
