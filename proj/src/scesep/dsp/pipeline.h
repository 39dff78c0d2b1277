// scesep/dsp/pipeline.h

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

#ifndef SCESEP_DSP_PIPELINE_H_
#define SCESEP_DSP_PIPELINE_H_

#include "scesep/dsp/filters.h"
#include "scesep/dsp/stft.h"

namespace scesep {
namespace dsp {

// Shared front-end parameters; corpus synthesis, inference and evaluation
// must all agree on these.
struct PipelineConfig {
  int sample_rate = 10000;
  int window = 512;
  int hop = 256;
  float preemphasis = 0.95f;

  int64_t bins() const { return window / 2 + 1; }
  // Frames produced by a waveform of len samples at the source_rate.
  int64_t frames_for(int64_t len, int source_rate) const;
};

// resample -> preemphasis -> stft
Spectrogram analyze(const Waveform &w, const PipelineConfig &cfg);

// istft -> deemphasis (the exact inverse path of analyze, up to window
// edge effects)
Waveform synthesize(const Spectrogram &s, const PipelineConfig &cfg);

}  // namespace dsp
}  // namespace scesep

#endif  // SCESEP_DSP_PIPELINE_H_
