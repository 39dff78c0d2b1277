// scesep/autograd/kernels.h

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

#ifndef SCESEP_AUTOGRAD_KERNELS_H_
#define SCESEP_AUTOGRAD_KERNELS_H_

#include <cstdint>

namespace scesep {
namespace ag {

// Dense float32 matrix kernels with float64 accumulation.  All matrices are
// row-major.  When accumulate is true the result is added into c, otherwise
// c is overwritten.  Parallelized over output rows; every output element is
// produced by exactly one thread, so results are bit-deterministic.

// c[m x n] = a[m x k] * b[k x n]
void gemm_nn(int64_t m, int64_t k, int64_t n, const float *a, const float *b,
             float *c, bool accumulate);

// c[m x n] = a[m x k] * b[n x k]^T
void gemm_nt(int64_t m, int64_t k, int64_t n, const float *a, const float *b,
             float *c, bool accumulate);

// c[m x n] = a[k x m]^T * b[k x n]
void gemm_tn(int64_t m, int64_t k, int64_t n, const float *a, const float *b,
             float *c, bool accumulate);

}  // namespace ag
}  // namespace scesep

#endif  // SCESEP_AUTOGRAD_KERNELS_H_
