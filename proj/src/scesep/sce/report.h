// scesep/sce/report.h

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

#ifndef SCESEP_SCE_REPORT_H_
#define SCESEP_SCE_REPORT_H_

#include <cstdint>

namespace scesep {
namespace sce {

// Cluster-quality diagnostic: mean cosine similarity between embedding
// vectors that share a dominant source vs vectors that do not.
struct CosineReport {
  double within = 0.0;
  double across = 0.0;
  int64_t vectors = 0;
};

// vi: [B,T,F,E] embeddings; labels: [B,T,F,M] in {-1,+1}.  A vector's
// group is the position of the +1 in its label row, namespaced per batch
// item so groups never mix across mixes.  Zero vectors are skipped.
// Exact mean pairwise cosine, computed from per-group sums of the unit
// vectors.
CosineReport cosine_separation_report(const float *vi, int64_t batch,
                                      int64_t frames, int64_t bins,
                                      int64_t embed_dim, const float *labels,
                                      int64_t sources);

}  // namespace sce
}  // namespace scesep

#endif  // SCESEP_SCE_REPORT_H_
