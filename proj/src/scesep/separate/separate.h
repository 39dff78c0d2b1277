// scesep/separate/separate.h

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

#ifndef SCESEP_SEPARATE_SEPARATE_H_
#define SCESEP_SEPARATE_SEPARATE_H_

#include <string>
#include <vector>

#include "scesep/dsp/pipeline.h"
#include "scesep/sce/model.h"
#include "scesep/separate/kmeans.h"

namespace scesep {
namespace separate {

// Per-bin cluster labels in {-1, +1}; exactly one +1 per (t, f).
struct ClusterAssignment {
  int64_t frames = 0;  // T
  int64_t bins = 0;    // F
  int clusters = 0;    // K
  std::vector<float> labels;     // T x F x K
  std::vector<float> centroids;  // K x E
  double inertia = 0.0;

  float label(int64_t t, int64_t f, int k) const {
    return labels[(t * bins + f) * clusters + k];
  }
};

ClusterAssignment assignment_from_kmeans(const KmeansResult &km,
                                         int64_t frames, int64_t bins,
                                         int64_t embed_dim);

// mask^(k)[t,f] = (label + 1) / 2 in {0, 1}; the K masks partition the
// time-frequency plane.
std::vector<std::vector<float>> masks_from_clusters(
    const ClusterAssignment &assign);

// Applies a binary mask to the mixture magnitudes (mixture phase is
// reused), inverts the STFT and undoes the preemphasis.
dsp::Waveform reconstruct(const dsp::Spectrogram &x,
                          const std::vector<float> &mask,
                          float preemphasis_coeff);

struct SeparationResult {
  std::vector<dsp::Waveform> sources;      // K waveforms
  std::vector<dsp::Spectrogram> masked;    // K masked spectrograms
  ClusterAssignment assignment;
  std::vector<float> embeddings;           // T x F x E, for diagnostics
};

// Full inference chain on a preprocessed mixture spectrogram: normalize,
// embed (arbitrary T), flatten the T*F embedding vectors, k-means into K
// clusters, mask, reconstruct.  Only the embedding network is used; the
// speaker table is not part of the interface.
SeparationResult separate_spectrogram(const sce::EmbeddingNet &net,
                                      const dsp::Spectrogram &mixture,
                                      int k, const dsp::PipelineConfig &cfg,
                                      uint64_t seed);

SeparationResult separate_waveform(const sce::EmbeddingNet &net,
                                   const dsp::Waveform &w, int k,
                                   const dsp::PipelineConfig &cfg,
                                   uint64_t seed);

SeparationResult separate_file(const sce::EmbeddingNet &net,
                               const std::string &wav_path, int k,
                               const dsp::PipelineConfig &cfg, uint64_t seed);

}  // namespace separate
}  // namespace scesep

#endif  // SCESEP_SEPARATE_SEPARATE_H_
