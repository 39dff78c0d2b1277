// scesep/eval/bench.h

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

#ifndef SCESEP_EVAL_BENCH_H_
#define SCESEP_EVAL_BENCH_H_

#include <cstdint>
#include <string>
#include <vector>

namespace scesep {
namespace eval {

struct BenchOptions {
  // Sized so every case streams from memory (none fits in cache): the
  // scaling ratios then reflect compute, with no cache cliff mid-sweep.
  int64_t batch = 8;
  int64_t frames_base = 40;  // T at factor 1
  int64_t bins = 129;
  int64_t sources = 2;
  int64_t embed_dim = 20;
  std::vector<int> factors = {1, 2, 4};  // T*F scale factors
  int reps = 21;
  bool include_affinity = true;  // time the quadratic reference kernel too
  // The quadratic kernel gets a smaller base so the largest factor stays
  // affordable; the scaling ratio is what matters, not the absolute size.
  int64_t affinity_frames_base = 5;
  uint64_t seed = 7;
};

struct BenchRow {
  std::string kernel;  // "sce" or "affinity"
  int64_t tf = 0;      // T * F per batch item
  double median_s = 0.0;
  int reps = 0;
};

// Times one forward+backward of the contrastive loss per repetition at
// T*F in {base, 2*base, 4*base}.  The optional affinity reference scores
// every pair of time-frequency vectors, an O((T*F)^2 * E) kernel, for
// contrast with the O(T*F * M * E) loss.
std::vector<BenchRow> bench_loss(const BenchOptions &options);

// The quadratic reference: loss = sum_{p,q} (v_p . v_q - y_p . y_q)^2
// with a hand-rolled gradient; returns the loss and fills grad (n x e)
// when non-null.
double affinity_loss_fwd_bwd(const float *v, const float *y, int64_t n,
                             int64_t e, int64_t m, std::vector<float> *grad);

std::string format_bench_table(const std::vector<BenchRow> &rows);

}  // namespace eval
}  // namespace scesep

#endif  // SCESEP_EVAL_BENCH_H_
