// scesep/autograd/kernels.cc

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

#include "scesep/autograd/kernels.h"

#include <vector>

#include "scesep/base/parallel.h"

namespace scesep {
namespace ag {

namespace {
// Work threshold (in multiply-adds) below which a kernel stays serial.
constexpr int64_t kParallelThreshold = 1 << 18;
}  // namespace

void gemm_nn(int64_t m, int64_t k, int64_t n, const float *a, const float *b,
             float *c, bool accumulate) {
  const int64_t min_rows =
      (m * k * n >= kParallelThreshold) ? 1 : m;  // serial if small
  parallel_for(
      0, m,
      [&](int64_t r0, int64_t r1) {
        std::vector<double> acc(static_cast<size_t>(n));
        for (int64_t i = r0; i < r1; ++i) {
          double *accp = acc.data();
          for (int64_t j = 0; j < n; ++j) accp[j] = 0.0;
          const float *ai = a + i * k;
          for (int64_t p = 0; p < k; ++p) {
            const double av = ai[p];
            const float *bp = b + p * n;
            for (int64_t j = 0; j < n; ++j) accp[j] += av * bp[j];
          }
          float *ci = c + i * n;
          if (accumulate) {
            for (int64_t j = 0; j < n; ++j) ci[j] += static_cast<float>(accp[j]);
          } else {
            for (int64_t j = 0; j < n; ++j) ci[j] = static_cast<float>(accp[j]);
          }
        }
      },
      min_rows);
}

void gemm_nt(int64_t m, int64_t k, int64_t n, const float *a, const float *b,
             float *c, bool accumulate) {
  const int64_t min_rows = (m * k * n >= kParallelThreshold) ? 1 : m;
  parallel_for(
      0, m,
      [&](int64_t r0, int64_t r1) {
        for (int64_t i = r0; i < r1; ++i) {
          const float *ai = a + i * k;
          float *ci = c + i * n;
          for (int64_t j = 0; j < n; ++j) {
            const float *bj = b + j * k;
            // Four f64 partial sums; fixed order keeps runs bit-identical.
            double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
            int64_t p = 0;
            for (; p + 4 <= k; p += 4) {
              s0 += static_cast<double>(ai[p]) * bj[p];
              s1 += static_cast<double>(ai[p + 1]) * bj[p + 1];
              s2 += static_cast<double>(ai[p + 2]) * bj[p + 2];
              s3 += static_cast<double>(ai[p + 3]) * bj[p + 3];
            }
            for (; p < k; ++p) s0 += static_cast<double>(ai[p]) * bj[p];
            const double s = (s0 + s1) + (s2 + s3);
            if (accumulate)
              ci[j] += static_cast<float>(s);
            else
              ci[j] = static_cast<float>(s);
          }
        }
      },
      min_rows);
}

void gemm_tn(int64_t m, int64_t k, int64_t n, const float *a, const float *b,
             float *c, bool accumulate) {
  const int64_t min_rows = (m * k * n >= kParallelThreshold) ? 1 : m;
  parallel_for(
      0, m,
      [&](int64_t r0, int64_t r1) {
        std::vector<double> acc(static_cast<size_t>(n));
        for (int64_t i = r0; i < r1; ++i) {
          double *accp = acc.data();
          for (int64_t j = 0; j < n; ++j) accp[j] = 0.0;
          for (int64_t p = 0; p < k; ++p) {
            const double av = a[p * m + i];
            const float *bp = b + p * n;
            for (int64_t j = 0; j < n; ++j) accp[j] += av * bp[j];
          }
          float *ci = c + i * n;
          if (accumulate) {
            for (int64_t j = 0; j < n; ++j) ci[j] += static_cast<float>(accp[j]);
          } else {
            for (int64_t j = 0; j < n; ++j) ci[j] = static_cast<float>(accp[j]);
          }
        }
      },
      min_rows);
}

}  // namespace ag
}  // namespace scesep
