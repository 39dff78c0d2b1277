// scesep/separate/kmeans.cc

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

#include "scesep/separate/kmeans.h"

#include <cmath>
#include <cstring>
#include <limits>

#include "scesep/base/error.h"

namespace scesep {
namespace separate {

namespace {

double sq_dist(const float *a, const float *b, int64_t e) {
  double acc = 0.0;
  for (int64_t i = 0; i < e; ++i) {
    const double d = static_cast<double>(a[i]) - b[i];
    acc += d * d;
  }
  return acc;
}

// k-means++: first centroid uniform, the rest proportional to the squared
// distance to the nearest chosen centroid.
std::vector<float> plus_plus_init(const float *v, int64_t n, int64_t e, int k,
                                  Rng &rng) {
  std::vector<float> centroids(static_cast<size_t>(k) * e);
  std::vector<double> d2(static_cast<size_t>(n),
                         std::numeric_limits<double>::infinity());

  int64_t first = static_cast<int64_t>(rng.below(static_cast<uint64_t>(n)));
  std::memcpy(centroids.data(), v + first * e, sizeof(float) * e);

  for (int c = 1; c < k; ++c) {
    const float *last = centroids.data() + (c - 1) * e;
    double total = 0.0;
    for (int64_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], sq_dist(v + i * e, last, e));
      total += d2[i];
    }
    int64_t pick = 0;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double run = 0.0;
      pick = n - 1;
      for (int64_t i = 0; i < n; ++i) {
        run += d2[i];
        if (run >= target) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<int64_t>(rng.below(static_cast<uint64_t>(n)));
    }
    std::memcpy(centroids.data() + c * e, v + pick * e, sizeof(float) * e);
  }
  return centroids;
}

}  // namespace

KmeansResult kmeans(const float *vectors, int64_t n, int64_t e, int k,
                    Rng &rng, int max_iter, double tol) {
  SCESEP_CHECK(k >= 1, "kmeans: k must be >= 1, got " << k);
  SCESEP_CHECK(n >= k, "kmeans: need at least k points, got n=" << n
                                                                << " k=" << k);

  KmeansResult res;
  res.centroids = plus_plus_init(vectors, n, e, k, rng);
  res.assignment.assign(static_cast<size_t>(n), 0);

  std::vector<double> sums(static_cast<size_t>(k) * e);
  std::vector<int64_t> counts(static_cast<size_t>(k));
  std::vector<float> next(static_cast<size_t>(k) * e);

  for (int iter = 0; iter < max_iter; ++iter) {
    // Assignment step; inertia is measured against the current centroids.
    double inertia = 0.0;
    for (int64_t i = 0; i < n; ++i) {
      int best = 0;
      double best_d = sq_dist(vectors + i * e, res.centroids.data(), e);
      for (int c = 1; c < k; ++c) {
        const double d = sq_dist(vectors + i * e, res.centroids.data() + c * e, e);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      res.assignment[i] = best;
      inertia += best_d;
    }
    res.inertia = inertia;
    res.inertia_history.push_back(inertia);
    res.iterations = iter + 1;

    // Update step.
    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (int64_t i = 0; i < n; ++i) {
      const int c = res.assignment[i];
      ++counts[c];
      const float *vi = vectors + i * e;
      double *s = sums.data() + static_cast<int64_t>(c) * e;
      for (int64_t j = 0; j < e; ++j) s[j] += vi[j];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        for (int64_t j = 0; j < e; ++j)
          next[c * e + j] =
              static_cast<float>(sums[c * e + j] / counts[c]);
      } else {
        // Re-seed an empty cluster to the point farthest from its centroid.
        int64_t far = 0;
        double far_d = -1.0;
        for (int64_t i = 0; i < n; ++i) {
          const double d = sq_dist(
              vectors + i * e,
              res.centroids.data() + static_cast<int64_t>(res.assignment[i]) * e,
              e);
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        std::memcpy(next.data() + c * e, vectors + far * e,
                    sizeof(float) * e);
      }
    }

    double max_shift = 0.0;
    for (int c = 0; c < k; ++c)
      max_shift = std::max(
          max_shift, sq_dist(next.data() + c * e, res.centroids.data() + c * e, e));
    res.centroids = next;
    if (std::sqrt(max_shift) < tol) break;
  }

  // Final assignment against the converged centroids.
  double inertia = 0.0;
  for (int64_t i = 0; i < n; ++i) {
    int best = 0;
    double best_d = sq_dist(vectors + i * e, res.centroids.data(), e);
    for (int c = 1; c < k; ++c) {
      const double d = sq_dist(vectors + i * e, res.centroids.data() + c * e, e);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    res.assignment[i] = best;
    inertia += best_d;
  }
  res.inertia = inertia;
  res.inertia_history.push_back(inertia);
  return res;
}

}  // namespace separate
}  // namespace scesep
