// scesep/eval/sdr.cc

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

#include "scesep/eval/sdr.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "scesep/base/error.h"

namespace scesep {
namespace eval {

double si_sdr(const std::vector<float> &estimate,
              const std::vector<float> &reference) {
  const size_t n = std::min(estimate.size(), reference.size());
  SCESEP_CHECK(n > 0, "si_sdr: empty signals");

  double dot = 0.0, ref_sq = 0.0;
  for (size_t i = 0; i < n; ++i) {
    dot += static_cast<double>(estimate[i]) * reference[i];
    ref_sq += static_cast<double>(reference[i]) * reference[i];
  }
  SCESEP_CHECK(ref_sq > 0.0, "si_sdr: silent reference");

  const double alpha = dot / ref_sq;
  double target_sq = 0.0, err_sq = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double t = alpha * reference[i];
    const double e = estimate[i] - t;
    target_sq += t * t;
    err_sq += e * e;
  }
  if (err_sq <= 0.0) return kSdrCapDb;
  if (target_sq <= 0.0) return -kSdrCapDb;
  const double db = 10.0 * std::log10(target_sq / err_sq);
  return std::clamp(db, -kSdrCapDb, kSdrCapDb);
}

PermutationResult best_permutation_sdr(
    const std::vector<dsp::Waveform> &estimates,
    const std::vector<dsp::Waveform> &references) {
  const int k = static_cast<int>(estimates.size());
  const int m = static_cast<int>(references.size());
  SCESEP_CHECK(m >= 1 && m <= 3, "best_permutation_sdr: need 1..3 references, "
                                     << "got " << m);
  SCESEP_CHECK(k >= m, "best_permutation_sdr: fewer estimates (" << k
                           << ") than references (" << m << ")");

  // Pairwise SI-SDR matrix [m][k].
  std::vector<std::vector<double>> sdr(m, std::vector<double>(k));
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < k; ++c)
      sdr[r][c] = si_sdr(estimates[c].samples, references[r].samples);

  PermutationResult best;
  best.mean_db = -std::numeric_limits<double>::infinity();

  std::vector<int> pick(m, -1);
  std::vector<bool> used(k, false);
  // Depth-first over injections reference -> estimate.
  std::function<void(int)> search = [&](int r) {
    if (r == m) {
      double total = 0.0;
      for (int i = 0; i < m; ++i) total += sdr[i][pick[i]];
      const double mean = total / m;
      if (mean > best.mean_db) {
        best.mean_db = mean;
        best.assignment = pick;
      }
      return;
    }
    for (int c = 0; c < k; ++c) {
      if (used[c]) continue;
      used[c] = true;
      pick[r] = c;
      search(r + 1);
      used[c] = false;
    }
  };
  search(0);

  best.sdr_db.resize(m);
  for (int r = 0; r < m; ++r) best.sdr_db[r] = sdr[r][best.assignment[r]];
  return best;
}

}  // namespace eval
}  // namespace scesep
