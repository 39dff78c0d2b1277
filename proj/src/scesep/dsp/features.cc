// scesep/dsp/features.cc

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

#include "scesep/dsp/features.h"

#include <cmath>

#include "scesep/base/error.h"

namespace scesep {
namespace dsp {

NormalizedFeature normalize_input(const std::vector<float> &magnitude,
                                  int64_t frames, int64_t bins) {
  SCESEP_CHECK(static_cast<int64_t>(magnitude.size()) == frames * bins,
               "normalize_input: buffer size " << magnitude.size()
                                               << " != " << frames << "x"
                                               << bins);
  NormalizedFeature out;
  out.frames = frames;
  out.bins = bins;
  out.values.resize(magnitude.size());

  float lo = 0.0f, hi = 0.0f;
  bool first = true;
  for (size_t i = 0; i < magnitude.size(); ++i) {
    SCESEP_CHECK(magnitude[i] >= 0.0f,
                 "normalize_input: negative magnitude at index " << i);
    const float r = std::sqrt(magnitude[i]);
    out.values[i] = r;
    if (first) {
      lo = hi = r;
      first = false;
    } else {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  const float span = hi - lo;
  if (span <= 0.0f) {
    std::fill(out.values.begin(), out.values.end(), 0.0f);
    return out;
  }
  // Division (not reciprocal multiply) so the maximum maps to exactly 1.
  for (float &v : out.values) v = (v - lo) / span;
  return out;
}

NormalizedFeature normalize_input(const Spectrogram &s) {
  return normalize_input(s.magnitude, s.frames, s.bins);
}

}  // namespace dsp
}  // namespace scesep
