// scesep/dsp/waveform.h

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

#ifndef SCESEP_DSP_WAVEFORM_H_
#define SCESEP_DSP_WAVEFORM_H_

#include <cstdint>
#include <string>
#include <vector>

namespace scesep {
namespace dsp {

struct Waveform {
  std::vector<float> samples;  // dimensionless amplitude, nominally [-1, 1)
  int sample_rate = 0;         // Hz

  int64_t size() const { return static_cast<int64_t>(samples.size()); }
  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(size()) / sample_rate : 0.0;
  }
};

// PCM 16-bit little-endian mono RIFF files.  Samples map to [-1, 1) by
// dividing by 32768.  Unknown chunks are skipped on read.
Waveform read_wav(const std::string &path);
void write_wav(const std::string &path, const Waveform &w);

// Header-only probe: (sample_count, sample_rate) without reading payload.
std::pair<int64_t, int> wav_info(const std::string &path);

}  // namespace dsp
}  // namespace scesep

#endif  // SCESEP_DSP_WAVEFORM_H_
