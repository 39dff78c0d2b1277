// scesep/dsp/stft.h

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

#ifndef SCESEP_DSP_STFT_H_
#define SCESEP_DSP_STFT_H_

#include <cstdint>
#include <vector>

#include "scesep/dsp/waveform.h"

namespace scesep {
namespace dsp {

// One-sided complex spectrogram, magnitude and phase stored separately.
// F = window/2 + 1 bins, T frames, row-major T x F buffers.
struct Spectrogram {
  int64_t frames = 0;  // T
  int64_t bins = 0;    // F
  std::vector<float> magnitude;  // T x F, >= 0
  std::vector<float> phase;      // T x F, radians
  int window = 0;
  int hop = 0;
  int sample_rate = 0;
  int64_t source_samples = 0;  // original waveform length, for trimming

  float &mag(int64_t t, int64_t f) { return magnitude[t * bins + f]; }
  float mag(int64_t t, int64_t f) const { return magnitude[t * bins + f]; }
  float &phi(int64_t t, int64_t f) { return phase[t * bins + f]; }
  float phi(int64_t t, int64_t f) const { return phase[t * bins + f]; }
};

// Frame count used by the analysis: full frames plus one zero-padded
// partial frame when samples are left over.  Returns 0 if len < window.
int64_t stft_num_frames(int64_t len, int window, int hop);

// Periodic Hann analysis window, one-sided FFT.  The trailing partial
// frame is zero-padded rather than dropped.  Errors if the waveform is
// shorter than one window.
Spectrogram stft(const Waveform &w, int window, int hop);

// Weighted overlap-add inverse with a Hann synthesis window and
// constant-overlap-add normalization.  Output is trimmed to
// source_samples when that is set.
Waveform istft(const Spectrogram &s);

// Elementwise complex sum of two spectrograms with identical geometry.
Spectrogram complex_add(const Spectrogram &a, const Spectrogram &b);

// Crop frames [start, start + count) keeping all metadata except
// source_samples (which becomes the synthesized length of the crop).
Spectrogram crop_frames(const Spectrogram &s, int64_t start, int64_t count);

}  // namespace dsp
}  // namespace scesep

#endif  // SCESEP_DSP_STFT_H_
