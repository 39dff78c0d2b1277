// scesep/autograd/ops.h

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

#ifndef SCESEP_AUTOGRAD_OPS_H_
#define SCESEP_AUTOGRAD_OPS_H_

#include <cstdint>
#include <vector>

#include "scesep/autograd/tape.h"
#include "scesep/autograd/tensor.h"

namespace scesep {
namespace ag {

// Binary elementwise ops with numpy-style broadcasting.  The gradient of a
// broadcast input is the sum of the output gradient over the broadcast axes.
Tensor add(const Tensor &a, const Tensor &b);
Tensor sub(const Tensor &a, const Tensor &b);
Tensor mul(const Tensor &a, const Tensor &b);

// Unary elementwise ops.
Tensor negate(const Tensor &x);
Tensor tanh(const Tensor &x);
Tensor sigmoid(const Tensor &x);
Tensor log(const Tensor &x);   // requires strictly positive input
Tensor sqrt(const Tensor &x);  // requires non-negative input
// softplus(x) = log(1 + e^x), evaluated in its overflow-safe form; this is
// the stable building block for log(sigmoid(x)) = -softplus(-x).
Tensor softplus(const Tensor &x);

// Reductions.  sum/mean are differentiable; max/argmax are forward-only
// (their outputs never carry gradients).
Tensor sum(const Tensor &t);
Tensor sum(const Tensor &t, int axis);
Tensor mean(const Tensor &t);
Tensor mean(const Tensor &t, int axis);
Tensor max(const Tensor &t, int axis);
Tensor argmax(const Tensor &t, int axis);  // indices stored as floats

// Shape ops (copies; storage is always contiguous row-major).
Tensor reshape(const Tensor &t, Shape shape);
Tensor slice(const Tensor &t, int axis, int64_t start, int64_t end);
Tensor concat(const std::vector<Tensor> &parts, int axis);
Tensor transpose(const Tensor &t, int axis0, int axis1);

// Matrix products over the last two axes; leading axes broadcast.
// Accumulation is float64 inside the kernels.
Tensor matmul(const Tensor &a, const Tensor &b);     // [..,m,k] x [..,k,n]
Tensor matmul_nt(const Tensor &a, const Tensor &b);  // [..,m,k] x [..,n,k]^T

// D[b,t,f,m] = sum_e vi[b,t,f,e] * vo[b,m,e].  The broadcasted embedding
// dot-product; fused so the B x T x F x M x E intermediate never exists.
Tensor pairwise_dot(const Tensor &vi, const Tensor &vo);

// Row gather from a [C x E] table; backward scatter-adds into table rows.
Tensor gather_rows(const Tensor &table, const std::vector<int64_t> &rows);

}  // namespace ag
}  // namespace scesep

#endif  // SCESEP_AUTOGRAD_OPS_H_
