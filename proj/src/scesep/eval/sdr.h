// scesep/eval/sdr.h

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

#ifndef SCESEP_EVAL_SDR_H_
#define SCESEP_EVAL_SDR_H_

#include <vector>

#include "scesep/dsp/waveform.h"

namespace scesep {
namespace eval {

// Scale-invariant SDR in dB:
//   s_t = (<est, ref> / ||ref||^2) * ref
//   10 * log10(||s_t||^2 / ||est - s_t||^2), capped to [-60, +60].
// Lengths are truncated to the shorter signal; a silent reference is an
// error.
double si_sdr(const std::vector<float> &estimate,
              const std::vector<float> &reference);

constexpr double kSdrCapDb = 60.0;

struct PermutationResult {
  // assignment[m] = index of the estimate matched to reference m
  std::vector<int> assignment;
  std::vector<double> sdr_db;  // per reference, under the best assignment
  double mean_db = 0.0;
};

// Exhaustive search over injections of references into estimates (K >= M,
// M <= 3), maximizing the mean SI-SDR.
PermutationResult best_permutation_sdr(
    const std::vector<dsp::Waveform> &estimates,
    const std::vector<dsp::Waveform> &references);

}  // namespace eval
}  // namespace scesep

#endif  // SCESEP_EVAL_SDR_H_
