// scesep/dsp/filters.h

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

#ifndef SCESEP_DSP_FILTERS_H_
#define SCESEP_DSP_FILTERS_H_

#include "scesep/dsp/waveform.h"

namespace scesep {
namespace dsp {

// Polyphase windowed-sinc resampler (Kaiser beta = 8.6, 64 taps per
// phase).  Output length is round(len * target / source).  Equal rates
// return a copy.
Waveform resample(const Waveform &w, int target_rate);

// y[n] = x[n] - a * x[n-1], with x[-1] = 0.  |a| < 1.
Waveform preemphasis(const Waveform &w, float a);

// Exact inverse IIR: y[n] = x[n] + a * y[n-1].
Waveform deemphasis(const Waveform &w, float a);

}  // namespace dsp
}  // namespace scesep

#endif  // SCESEP_DSP_FILTERS_H_
