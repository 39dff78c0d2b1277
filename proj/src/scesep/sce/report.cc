// scesep/sce/report.cc

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

#include "scesep/sce/report.h"

#include <cmath>
#include <vector>

#include "scesep/base/error.h"

namespace scesep {
namespace sce {

CosineReport cosine_separation_report(const float *vi, int64_t batch,
                                      int64_t frames, int64_t bins,
                                      int64_t embed_dim, const float *labels,
                                      int64_t sources) {
  const int64_t groups = batch * sources;
  std::vector<std::vector<double>> group_sum(
      static_cast<size_t>(groups),
      std::vector<double>(static_cast<size_t>(embed_dim), 0.0));
  std::vector<int64_t> group_n(static_cast<size_t>(groups), 0);
  std::vector<double> total_sum(static_cast<size_t>(embed_dim), 0.0);
  int64_t n = 0;

  const int64_t rows = batch * frames * bins;
  for (int64_t r = 0; r < rows; ++r) {
    const int64_t b = r / (frames * bins);
    const float *v = vi + r * embed_dim;
    double sq = 0.0;
    for (int64_t e = 0; e < embed_dim; ++e)
      sq += static_cast<double>(v[e]) * v[e];
    if (sq <= 0.0) continue;  // zero vectors carry no direction
    const double inv = 1.0 / std::sqrt(sq);

    int64_t dominant = -1;
    const float *lrow = labels + r * sources;
    for (int64_t m = 0; m < sources; ++m)
      if (lrow[m] > 0.0f) {
        dominant = m;
        break;
      }
    SCESEP_CHECK(dominant >= 0,
                 "cosine report: label row without a +1 at row " << r);

    auto &gs = group_sum[b * sources + dominant];
    for (int64_t e = 0; e < embed_dim; ++e) {
      const double u = v[e] * inv;
      gs[e] += u;
      total_sum[e] += u;
    }
    ++group_n[b * sources + dominant];
    ++n;
  }

  auto sqnorm = [&](const std::vector<double> &s) {
    double acc = 0.0;
    for (double x : s) acc += x * x;
    return acc;
  };

  double t_within = 0.0;
  int64_t p_within = 0;
  for (int64_t g = 0; g < groups; ++g) {
    t_within += (sqnorm(group_sum[g]) - group_n[g]) / 2.0;
    p_within += group_n[g] * (group_n[g] - 1) / 2;
  }
  const double t_all = (sqnorm(total_sum) - n) / 2.0;
  const int64_t p_all = n * (n - 1) / 2;

  CosineReport rep;
  rep.vectors = n;
  rep.within = (p_within > 0) ? t_within / p_within : 0.0;
  const int64_t p_across = p_all - p_within;
  rep.across = (p_across > 0) ? (t_all - t_within) / p_across : 0.0;
  return rep;
}

}  // namespace sce
}  // namespace scesep
