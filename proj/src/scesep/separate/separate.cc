// scesep/separate/separate.cc

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

#include "scesep/separate/separate.h"

#include "scesep/base/error.h"
#include "scesep/dsp/features.h"

namespace scesep {
namespace separate {

ClusterAssignment assignment_from_kmeans(const KmeansResult &km,
                                         int64_t frames, int64_t bins,
                                         int64_t embed_dim) {
  const int k =
      static_cast<int>(km.centroids.size() / static_cast<size_t>(embed_dim));
  SCESEP_CHECK(static_cast<int64_t>(km.assignment.size()) == frames * bins,
               "assignment_from_kmeans: " << km.assignment.size()
                                          << " assignments for " << frames
                                          << "x" << bins << " bins");
  ClusterAssignment out;
  out.frames = frames;
  out.bins = bins;
  out.clusters = k;
  out.centroids = km.centroids;
  out.inertia = km.inertia;
  out.labels.assign(static_cast<size_t>(frames * bins * k), -1.0f);
  for (int64_t i = 0; i < frames * bins; ++i)
    out.labels[i * k + km.assignment[i]] = 1.0f;
  return out;
}

std::vector<std::vector<float>> masks_from_clusters(
    const ClusterAssignment &assign) {
  const int64_t cells = assign.frames * assign.bins;
  std::vector<std::vector<float>> masks(
      assign.clusters, std::vector<float>(static_cast<size_t>(cells)));
  for (int64_t i = 0; i < cells; ++i)
    for (int k = 0; k < assign.clusters; ++k)
      masks[k][i] = 0.5f * (assign.labels[i * assign.clusters + k] + 1.0f);
  return masks;
}

dsp::Waveform reconstruct(const dsp::Spectrogram &x,
                          const std::vector<float> &mask,
                          float preemphasis_coeff) {
  SCESEP_CHECK(static_cast<int64_t>(mask.size()) == x.frames * x.bins,
               "reconstruct: mask size " << mask.size() << " != " << x.frames
                                         << "x" << x.bins);
  dsp::Spectrogram masked = x;
  for (size_t i = 0; i < masked.magnitude.size(); ++i)
    masked.magnitude[i] *= mask[i];
  return dsp::deemphasis(dsp::istft(masked), preemphasis_coeff);
}

SeparationResult separate_spectrogram(const sce::EmbeddingNet &net,
                                      const dsp::Spectrogram &mixture, int k,
                                      const dsp::PipelineConfig &cfg,
                                      uint64_t seed) {
  SCESEP_CHECK(k >= 1, "separate: k must be >= 1, got " << k);
  SCESEP_CHECK(mixture.bins == net.bins,
               "separate: mixture has " << mixture.bins
                                        << " bins but the model expects "
                                        << net.bins);
  const int64_t frames = mixture.frames, bins = mixture.bins;

  const dsp::NormalizedFeature feat = dsp::normalize_input(mixture);
  ag::Tensor features =
      ag::Tensor::from({1, frames, bins}, feat.values);
  ag::Tensor vi = net.embed(features);  // no tape: inference only

  Rng rng(seed);
  const KmeansResult km =
      kmeans(vi.data(), frames * bins, net.embed_dim, k, rng);

  SeparationResult out;
  out.assignment = assignment_from_kmeans(km, frames, bins, net.embed_dim);
  out.embeddings = vi.to_vector();
  const auto masks = masks_from_clusters(out.assignment);
  for (int c = 0; c < k; ++c) {
    dsp::Spectrogram masked = mixture;
    for (size_t i = 0; i < masked.magnitude.size(); ++i)
      masked.magnitude[i] *= masks[c][i];
    out.sources.push_back(
        dsp::deemphasis(dsp::istft(masked), cfg.preemphasis));
    out.masked.push_back(std::move(masked));
  }
  return out;
}

SeparationResult separate_waveform(const sce::EmbeddingNet &net,
                                   const dsp::Waveform &w, int k,
                                   const dsp::PipelineConfig &cfg,
                                   uint64_t seed) {
  const dsp::Spectrogram mixture = dsp::analyze(w, cfg);
  return separate_spectrogram(net, mixture, k, cfg, seed);
}

SeparationResult separate_file(const sce::EmbeddingNet &net,
                               const std::string &wav_path, int k,
                               const dsp::PipelineConfig &cfg, uint64_t seed) {
  return separate_waveform(net, dsp::read_wav(wav_path), k, cfg, seed);
}

}  // namespace separate
}  // namespace scesep
