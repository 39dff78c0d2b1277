// scesep/dsp/pipeline.cc

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

#include "scesep/dsp/pipeline.h"

#include <cmath>

namespace scesep {
namespace dsp {

int64_t PipelineConfig::frames_for(int64_t len, int source_rate) const {
  int64_t n = len;
  if (source_rate != sample_rate)
    n = static_cast<int64_t>(std::llround(static_cast<double>(len) *
                                          sample_rate / source_rate));
  return stft_num_frames(n, window, hop);
}

Spectrogram analyze(const Waveform &w, const PipelineConfig &cfg) {
  Waveform x = resample(w, cfg.sample_rate);
  x = preemphasis(x, cfg.preemphasis);
  return stft(x, cfg.window, cfg.hop);
}

Waveform synthesize(const Spectrogram &s, const PipelineConfig &cfg) {
  return deemphasis(istft(s), cfg.preemphasis);
}

}  // namespace dsp
}  // namespace scesep
