// scesep/corpus/mix.h

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

#ifndef SCESEP_CORPUS_MIX_H_
#define SCESEP_CORPUS_MIX_H_

#include <string>
#include <vector>

#include "scesep/base/rng.h"
#include "scesep/corpus/registry.h"
#include "scesep/dsp/features.h"
#include "scesep/dsp/pipeline.h"

namespace scesep {
namespace corpus {

enum class Split { kTrain, kValidate, kTest };

const char *split_name(Split s);

// Per-speaker positional partition of the (sorted) utterance list into
// train/validate/test.  Splits are disjoint and every speaker appears in
// all three, which requires at least three utterances per speaker.
class SplitSpec {
 public:
  static SplitSpec make(const SpeakerRegistry &reg, double train_frac = 0.8,
                        double validate_frac = 0.1);

  // Utterance indices (into Speaker::utterances) of one split.
  const std::vector<int> &utterances(int speaker_index, Split s) const;

 private:
  // [speaker][split] -> utterance indices
  std::vector<std::vector<std::vector<int>>> table_;
};

enum class MixType { kFF, kMM, kFM, kRandom, kRandom3 };

MixType mix_type_from_name(const std::string &name);
const char *mix_type_name(MixType t);
int mix_type_sources(MixType t);

struct MixSourceSpec {
  int speaker_index = -1;
  std::string utterance;     // utterance name (file stem)
  int64_t offset_frames = 0;
};

struct MixSpec {
  std::string id;
  std::vector<MixSourceSpec> sources;  // pairwise distinct speakers
};

// A synthesized mixture: complex-sum spectrogram, per-source spectrograms
// and the loudest-source labels.
struct MixResult {
  dsp::Spectrogram mixture;                 // X
  std::vector<dsp::Spectrogram> sources;    // S^(m)
  std::vector<float> labels;                // T x F x M in {-1, +1}
};

// Y[t,f,m] = +1 iff source m has the largest magnitude at (t,f); ties go
// to the lowest source position.
std::vector<float> compute_labels(const std::vector<dsp::Spectrogram> &sources);

// Preprocesses every source independently (resample, preemphasis, STFT),
// crops each to `frames` frames at its offset (frames = 0 takes the
// longest common range) and sums the complex spectrograms.
MixResult make_mix(const SpeakerRegistry &reg, const MixSpec &spec,
                   const dsp::PipelineConfig &cfg, int64_t frames);

// Assembled training batch.
struct Batch {
  int64_t batch = 0, frames = 0, bins = 0, sources = 0;  // B, T, F, M
  std::vector<float> features;          // B x T x F, normalized
  std::vector<float> labels;            // B x T x F x M in {-1, +1}
  std::vector<int64_t> speaker_indices; // B x M dense indices
  std::vector<float> source_magnitude;  // B x T x F x M, diagnostics
};

// Draws B independent mixes of the requested type from one split.
// Deterministic given the rng state.
Batch sample_batch(const SpeakerRegistry &reg, const SplitSpec &split_spec,
                   Split split, MixType type, int64_t batch, int64_t frames,
                   const dsp::PipelineConfig &cfg, Rng &rng);

// Draws a single MixSpec (speakers, utterances, offsets) of the requested
// type; used by both sample_batch and the mix manifest writer.
MixSpec sample_mix_spec(const SpeakerRegistry &reg, const SplitSpec &split_spec,
                        Split split, MixType type, int64_t frames,
                        const dsp::PipelineConfig &cfg, Rng &rng);

}  // namespace corpus
}  // namespace scesep

#endif  // SCESEP_CORPUS_MIX_H_
