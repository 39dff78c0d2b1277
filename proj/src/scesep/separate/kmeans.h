// scesep/separate/kmeans.h

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

#ifndef SCESEP_SEPARATE_KMEANS_H_
#define SCESEP_SEPARATE_KMEANS_H_

#include <cstdint>
#include <vector>

#include "scesep/base/rng.h"

namespace scesep {
namespace separate {

struct KmeansResult {
  std::vector<int> assignment;          // n entries in [0, k)
  std::vector<float> centroids;         // k x e
  double inertia = 0.0;                 // final sum of squared distances
  std::vector<double> inertia_history;  // per Lloyd iteration
  int iterations = 0;
};

// Lloyd's algorithm with k-means++ seeding.  Stops when the largest
// centroid shift drops below tol or after max_iter iterations.  An empty
// cluster is re-seeded to the point farthest from its assigned centroid.
// Deterministic given the rng state.
KmeansResult kmeans(const float *vectors, int64_t n, int64_t e, int k,
                    Rng &rng, int max_iter = 300, double tol = 1e-6);

}  // namespace separate
}  // namespace scesep

#endif  // SCESEP_SEPARATE_KMEANS_H_
