// scesep/dsp/features.h

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

#ifndef SCESEP_DSP_FEATURES_H_
#define SCESEP_DSP_FEATURES_H_

#include <cstdint>
#include <vector>

#include "scesep/dsp/stft.h"

namespace scesep {
namespace dsp {

// Model input features in [0, 1]; min is 0 and max is 1 over the whole
// block unless the input is constant (then all zeros).
struct NormalizedFeature {
  int64_t frames = 0;
  int64_t bins = 0;
  std::vector<float> values;  // T x F
};

// Square root of the magnitudes, then min-max scaling over the full
// T x F block.
NormalizedFeature normalize_input(const std::vector<float> &magnitude,
                                  int64_t frames, int64_t bins);

NormalizedFeature normalize_input(const Spectrogram &s);

}  // namespace dsp
}  // namespace scesep

#endif  // SCESEP_DSP_FEATURES_H_
