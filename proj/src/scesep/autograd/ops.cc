// scesep/autograd/ops.cc

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

#include "scesep/autograd/ops.h"

#include <cmath>
#include <cstring>

#include "scesep/autograd/kernels.h"
#include "scesep/base/error.h"
#include "scesep/base/parallel.h"

namespace scesep {
namespace ag {

namespace {

using NodePtr = std::shared_ptr<detail::Node>;

bool recording() { return Tape::active() != nullptr; }

bool want_grad(const Tensor &a) { return recording() && a.requires_grad(); }
bool want_grad(const Tensor &a, const Tensor &b) {
  return recording() && (a.requires_grad() || b.requires_grad());
}

void check_finite(const Tensor &t, const char *op) {
  if (!debug_checks_enabled()) return;
  const float *p = t.data();
  const int64_t n = t.numel();
  for (int64_t i = 0; i < n; ++i)
    SCESEP_CHECK(std::isfinite(p[i]),
                 op << ": non-finite value at flat index " << i);
}

int normalize_axis(int axis, int rank, const Shape &shape) {
  int a = axis;
  if (a < 0) a += rank;
  SCESEP_CHECK(a >= 0 && a < rank, "axis " << axis << " out of range for shape "
                                           << shape_str(shape));
  return a;
}

std::vector<int64_t> row_major_strides(const Shape &s) {
  std::vector<int64_t> st(s.size());
  int64_t acc = 1;
  for (int i = static_cast<int>(s.size()) - 1; i >= 0; --i) {
    st[i] = acc;
    acc *= s[i];
  }
  return st;
}

struct Bcast {
  Shape out;
  std::vector<int64_t> sa, sb;  // strides aligned to out rank; 0 = broadcast
};

Bcast broadcast(const Shape &a, const Shape &b, const char *op) {
  const int ra = static_cast<int>(a.size()), rb = static_cast<int>(b.size());
  const int r = std::max(ra, rb);
  Bcast bc;
  bc.out.resize(r);
  for (int i = 0; i < r; ++i) {
    const int64_t da = (i >= r - ra) ? a[i - (r - ra)] : 1;
    const int64_t db = (i >= r - rb) ? b[i - (r - rb)] : 1;
    SCESEP_CHECK(da == db || da == 1 || db == 1,
                 op << ": shapes " << shape_str(a) << " and " << shape_str(b)
                    << " are not broadcast-compatible");
    bc.out[i] = std::max(da, db);
  }
  const auto sta = row_major_strides(a), stb = row_major_strides(b);
  bc.sa.assign(r, 0);
  bc.sb.assign(r, 0);
  for (int i = 0; i < r; ++i) {
    if (i >= r - ra && a[i - (r - ra)] != 1) bc.sa[i] = sta[i - (r - ra)];
    if (i >= r - rb && b[i - (r - rb)] != 1) bc.sb[i] = stb[i - (r - rb)];
  }
  return bc;
}

// Calls f(linear_out, offset_a, offset_b) for every output element.
template <typename F>
void for_each_bcast(const Bcast &bc, F &&f) {
  const int r = static_cast<int>(bc.out.size());
  const int64_t n = shape_numel(bc.out);
  if (r == 0) {
    f(0, 0, 0);
    return;
  }
  std::vector<int64_t> idx(r, 0);
  int64_t oa = 0, ob = 0;
  for (int64_t lin = 0; lin < n; ++lin) {
    f(lin, oa, ob);
    for (int d = r - 1; d >= 0; --d) {
      ++idx[d];
      oa += bc.sa[d];
      ob += bc.sb[d];
      if (idx[d] < bc.out[d]) break;
      oa -= bc.sa[d] * bc.out[d];
      ob -= bc.sb[d] * bc.out[d];
      idx[d] = 0;
    }
  }
}

enum class BinKind { kAdd, kSub, kMul };

Tensor binary_op(const Tensor &a, const Tensor &b, BinKind kind,
                 const char *name) {
  const bool same = same_shape(a.shape(), b.shape());
  Bcast bc;
  if (!same) bc = broadcast(a.shape(), b.shape(), name);
  const Shape &out_shape = same ? a.shape() : bc.out;

  Tensor out = Tensor::uninit(out_shape, want_grad(a, b));
  const float *pa = a.data();
  const float *pb = b.data();
  float *po = out.data();
  const int64_t n = out.numel();

  if (same) {
    switch (kind) {
      case BinKind::kAdd:
        for (int64_t i = 0; i < n; ++i) po[i] = pa[i] + pb[i];
        break;
      case BinKind::kSub:
        for (int64_t i = 0; i < n; ++i) po[i] = pa[i] - pb[i];
        break;
      case BinKind::kMul:
        for (int64_t i = 0; i < n; ++i) po[i] = pa[i] * pb[i];
        break;
    }
  } else {
    switch (kind) {
      case BinKind::kAdd:
        for_each_bcast(bc, [&](int64_t o, int64_t ia, int64_t ib) {
          po[o] = pa[ia] + pb[ib];
        });
        break;
      case BinKind::kSub:
        for_each_bcast(bc, [&](int64_t o, int64_t ia, int64_t ib) {
          po[o] = pa[ia] - pb[ib];
        });
        break;
      case BinKind::kMul:
        for_each_bcast(bc, [&](int64_t o, int64_t ia, int64_t ib) {
          po[o] = pa[ia] * pb[ib];
        });
        break;
    }
  }
  check_finite(out, name);

  if (out.requires_grad()) {
    NodePtr an = a.node(), bn = b.node(), on = out.node();
    Tape::active()->record([an, bn, on, bc, same, kind] {
      const float *g = on->grad.data();
      const int64_t count = static_cast<int64_t>(on->data.size());
      float *ga = an->requires_grad ? an->grad.data() : nullptr;
      float *gb = bn->requires_grad ? bn->grad.data() : nullptr;
      const float *pa2 = an->data.data();
      const float *pb2 = bn->data.data();
      if (same) {
        switch (kind) {
          case BinKind::kAdd:
            if (ga)
              for (int64_t i = 0; i < count; ++i) ga[i] += g[i];
            if (gb)
              for (int64_t i = 0; i < count; ++i) gb[i] += g[i];
            break;
          case BinKind::kSub:
            if (ga)
              for (int64_t i = 0; i < count; ++i) ga[i] += g[i];
            if (gb)
              for (int64_t i = 0; i < count; ++i) gb[i] -= g[i];
            break;
          case BinKind::kMul:
            if (ga)
              for (int64_t i = 0; i < count; ++i) ga[i] += g[i] * pb2[i];
            if (gb)
              for (int64_t i = 0; i < count; ++i) gb[i] += g[i] * pa2[i];
            break;
        }
      } else {
        for_each_bcast(bc, [&](int64_t o, int64_t ia, int64_t ib) {
          switch (kind) {
            case BinKind::kAdd:
              if (ga) ga[ia] += g[o];
              if (gb) gb[ib] += g[o];
              break;
            case BinKind::kSub:
              if (ga) ga[ia] += g[o];
              if (gb) gb[ib] -= g[o];
              break;
            case BinKind::kMul:
              if (ga) ga[ia] += g[o] * pb2[ib];
              if (gb) gb[ib] += g[o] * pa2[ia];
              break;
          }
        });
      }
    }, on);
  }
  return out;
}

}  // namespace

Tensor add(const Tensor &a, const Tensor &b) {
  return binary_op(a, b, BinKind::kAdd, "add");
}
Tensor sub(const Tensor &a, const Tensor &b) {
  return binary_op(a, b, BinKind::kSub, "sub");
}
Tensor mul(const Tensor &a, const Tensor &b) {
  return binary_op(a, b, BinKind::kMul, "mul");
}

namespace {

// Generic unary op.  fwd fills the output; bwd accumulates into gx given
// (output grad, input data, output data).
template <typename Fwd, typename Bwd>
Tensor unary_op(const Tensor &x, const char *name, Fwd fwd, Bwd bwd) {
  Tensor out = Tensor::uninit(x.shape(), want_grad(x));
  const int64_t n = x.numel();
  fwd(x.data(), out.data(), n);
  check_finite(out, name);
  if (out.requires_grad()) {
    NodePtr xn = x.node(), on = out.node();
    Tape::active()->record([xn, on, bwd, n] {
      bwd(on->grad.data(), xn->data.data(), on->data.data(), xn->grad.data(),
          n);
    }, on);
  }
  return out;
}

float stable_softplus(float v) {
  // log(1 + e^v) without overflow for large |v|.
  if (v > 0.0f)
    return v + std::log1p(std::exp(-v));
  return std::log1p(std::exp(v));
}

}  // namespace

Tensor negate(const Tensor &x) {
  return unary_op(
      x, "negate",
      [](const float *p, float *o, int64_t n) {
        for (int64_t i = 0; i < n; ++i) o[i] = -p[i];
      },
      [](const float *g, const float *, const float *, float *gx, int64_t n) {
        for (int64_t i = 0; i < n; ++i) gx[i] -= g[i];
      });
}

Tensor tanh(const Tensor &x) {
  return unary_op(
      x, "tanh",
      [](const float *p, float *o, int64_t n) {
        for (int64_t i = 0; i < n; ++i) o[i] = std::tanh(p[i]);
      },
      [](const float *g, const float *, const float *y, float *gx, int64_t n) {
        for (int64_t i = 0; i < n; ++i) gx[i] += g[i] * (1.0f - y[i] * y[i]);
      });
}

Tensor sigmoid(const Tensor &x) {
  return unary_op(
      x, "sigmoid",
      [](const float *p, float *o, int64_t n) {
        for (int64_t i = 0; i < n; ++i) o[i] = 1.0f / (1.0f + std::exp(-p[i]));
      },
      [](const float *g, const float *, const float *y, float *gx, int64_t n) {
        for (int64_t i = 0; i < n; ++i) gx[i] += g[i] * y[i] * (1.0f - y[i]);
      });
}

Tensor log(const Tensor &x) {
  const float *p = x.data();
  for (int64_t i = 0; i < x.numel(); ++i)
    SCESEP_CHECK(p[i] > 0.0f, "log: input must be strictly positive, got "
                                  << p[i] << " at flat index " << i);
  return unary_op(
      x, "log",
      [](const float *in, float *o, int64_t n) {
        for (int64_t i = 0; i < n; ++i) o[i] = std::log(in[i]);
      },
      [](const float *g, const float *in, const float *, float *gx,
         int64_t n) {
        for (int64_t i = 0; i < n; ++i) gx[i] += g[i] / in[i];
      });
}

Tensor sqrt(const Tensor &x) {
  const float *p = x.data();
  for (int64_t i = 0; i < x.numel(); ++i)
    SCESEP_CHECK(p[i] >= 0.0f, "sqrt: input must be non-negative, got "
                                   << p[i] << " at flat index " << i);
  return unary_op(
      x, "sqrt",
      [](const float *in, float *o, int64_t n) {
        for (int64_t i = 0; i < n; ++i) o[i] = std::sqrt(in[i]);
      },
      [](const float *g, const float *, const float *y, float *gx, int64_t n) {
        for (int64_t i = 0; i < n; ++i) gx[i] += g[i] * 0.5f / y[i];
      });
}

Tensor softplus(const Tensor &x) {
  return unary_op(
      x, "softplus",
      [](const float *in, float *o, int64_t n) {
        for (int64_t i = 0; i < n; ++i) o[i] = stable_softplus(in[i]);
      },
      [](const float *g, const float *in, const float *, float *gx,
         int64_t n) {
        for (int64_t i = 0; i < n; ++i)
          gx[i] += g[i] / (1.0f + std::exp(-in[i]));
      });
}

Tensor sum(const Tensor &t) {
  Tensor out = Tensor::uninit({}, want_grad(t));
  const float *p = t.data();
  double acc = 0.0;
  for (int64_t i = 0; i < t.numel(); ++i) acc += p[i];
  out.data()[0] = static_cast<float>(acc);
  check_finite(out, "sum");
  if (out.requires_grad()) {
    NodePtr tn = t.node(), on = out.node();
    Tape::active()->record([tn, on] {
      const float g = on->grad[0];
      float *gt = tn->grad.data();
      const int64_t n = static_cast<int64_t>(tn->data.size());
      for (int64_t i = 0; i < n; ++i) gt[i] += g;
    }, on);
  }
  return out;
}

namespace {

// Splits shape around axis into (outer, mid, inner) extents.
void axis_split(const Shape &s, int axis, int64_t *outer, int64_t *mid,
                int64_t *inner) {
  *outer = 1;
  *mid = s[axis];
  *inner = 1;
  for (int i = 0; i < axis; ++i) *outer *= s[i];
  for (size_t i = axis + 1; i < s.size(); ++i) *inner *= s[i];
}

Shape drop_axis(const Shape &s, int axis) {
  Shape out;
  for (int i = 0; i < static_cast<int>(s.size()); ++i)
    if (i != axis) out.push_back(s[i]);
  return out;
}

}  // namespace

Tensor sum(const Tensor &t, int axis) {
  const int a = normalize_axis(axis, t.rank(), t.shape());
  int64_t outer, mid, inner;
  axis_split(t.shape(), a, &outer, &mid, &inner);
  Tensor out = Tensor::uninit(drop_axis(t.shape(), a), want_grad(t));
  const float *p = t.data();
  float *po = out.data();
  for (int64_t o = 0; o < outer; ++o)
    for (int64_t i = 0; i < inner; ++i) {
      double acc = 0.0;
      for (int64_t m = 0; m < mid; ++m) acc += p[(o * mid + m) * inner + i];
      po[o * inner + i] = static_cast<float>(acc);
    }
  check_finite(out, "sum");
  if (out.requires_grad()) {
    NodePtr tn = t.node(), on = out.node();
    Tape::active()->record([tn, on, outer, mid, inner] {
      const float *g = on->grad.data();
      float *gt = tn->grad.data();
      for (int64_t o = 0; o < outer; ++o)
        for (int64_t m = 0; m < mid; ++m)
          for (int64_t i = 0; i < inner; ++i)
            gt[(o * mid + m) * inner + i] += g[o * inner + i];
    }, on);
  }
  return out;
}

namespace {

Tensor scaled(const Tensor &t, double factor, const char *name) {
  Tensor out = Tensor::uninit(t.shape(), want_grad(t));
  const float *p = t.data();
  float *po = out.data();
  const int64_t n = t.numel();
  for (int64_t i = 0; i < n; ++i)
    po[i] = static_cast<float>(p[i] * factor);
  check_finite(out, name);
  if (out.requires_grad()) {
    NodePtr tn = t.node(), on = out.node();
    Tape::active()->record([tn, on, factor, n] {
      const float *g = on->grad.data();
      float *gt = tn->grad.data();
      for (int64_t i = 0; i < n; ++i)
        gt[i] += static_cast<float>(g[i] * factor);
    }, on);
  }
  return out;
}

}  // namespace

Tensor mean(const Tensor &t) { return scaled(sum(t), 1.0 / t.numel(), "mean"); }

Tensor mean(const Tensor &t, int axis) {
  const int a = normalize_axis(axis, t.rank(), t.shape());
  return scaled(sum(t, a), 1.0 / t.shape()[a], "mean");
}

Tensor max(const Tensor &t, int axis) {
  const int a = normalize_axis(axis, t.rank(), t.shape());
  int64_t outer, mid, inner;
  axis_split(t.shape(), a, &outer, &mid, &inner);
  Tensor out = Tensor::uninit(drop_axis(t.shape(), a), false);
  const float *p = t.data();
  float *po = out.data();
  for (int64_t o = 0; o < outer; ++o)
    for (int64_t i = 0; i < inner; ++i) {
      float best = p[o * mid * inner + i];
      for (int64_t m = 1; m < mid; ++m)
        best = std::max(best, p[(o * mid + m) * inner + i]);
      po[o * inner + i] = best;
    }
  return out;
}

Tensor argmax(const Tensor &t, int axis) {
  const int a = normalize_axis(axis, t.rank(), t.shape());
  int64_t outer, mid, inner;
  axis_split(t.shape(), a, &outer, &mid, &inner);
  Tensor out = Tensor::uninit(drop_axis(t.shape(), a), false);
  const float *p = t.data();
  float *po = out.data();
  for (int64_t o = 0; o < outer; ++o)
    for (int64_t i = 0; i < inner; ++i) {
      int64_t best = 0;
      float best_v = p[o * mid * inner + i];
      for (int64_t m = 1; m < mid; ++m) {
        const float v = p[(o * mid + m) * inner + i];
        if (v > best_v) {  // ties keep the lowest index
          best_v = v;
          best = m;
        }
      }
      po[o * inner + i] = static_cast<float>(best);
    }
  return out;
}

Tensor reshape(const Tensor &t, Shape shape) {
  SCESEP_CHECK(shape_numel(shape) == t.numel(),
               "reshape: element count mismatch, " << shape_str(t.shape())
                                                   << " -> " << shape_str(shape));
  Tensor out = Tensor::uninit(std::move(shape), want_grad(t));
  std::memcpy(out.data(), t.data(), sizeof(float) * t.numel());
  if (out.requires_grad()) {
    NodePtr tn = t.node(), on = out.node();
    Tape::active()->record([tn, on] {
      const int64_t n = static_cast<int64_t>(tn->data.size());
      const float *g = on->grad.data();
      float *gt = tn->grad.data();
      for (int64_t i = 0; i < n; ++i) gt[i] += g[i];
    }, on);
  }
  return out;
}

Tensor slice(const Tensor &t, int axis, int64_t start, int64_t end) {
  const int a = normalize_axis(axis, t.rank(), t.shape());
  SCESEP_CHECK(start >= 0 && start < end && end <= t.shape()[a],
               "slice: bad range [" << start << ", " << end << ") on axis " << a
                                    << " of shape " << shape_str(t.shape()));
  int64_t outer, mid, inner;
  axis_split(t.shape(), a, &outer, &mid, &inner);
  Shape out_shape = t.shape();
  out_shape[a] = end - start;
  const int64_t span = end - start;
  Tensor out = Tensor::uninit(out_shape, want_grad(t));
  const float *p = t.data();
  float *po = out.data();
  for (int64_t o = 0; o < outer; ++o)
    std::memcpy(po + o * span * inner, p + (o * mid + start) * inner,
                sizeof(float) * span * inner);
  if (out.requires_grad()) {
    NodePtr tn = t.node(), on = out.node();
    Tape::active()->record([tn, on, outer, mid, inner, start, span] {
      const float *g = on->grad.data();
      float *gt = tn->grad.data();
      for (int64_t o = 0; o < outer; ++o)
        for (int64_t s = 0; s < span; ++s)
          for (int64_t i = 0; i < inner; ++i)
            gt[(o * mid + start + s) * inner + i] +=
                g[(o * span + s) * inner + i];
    }, on);
  }
  return out;
}

Tensor concat(const std::vector<Tensor> &parts, int axis) {
  SCESEP_CHECK(!parts.empty(), "concat: no inputs");
  const int a = normalize_axis(axis, parts[0].rank(), parts[0].shape());
  Shape out_shape = parts[0].shape();
  int64_t total = 0;
  bool any_grad = false;
  for (const Tensor &p : parts) {
    SCESEP_CHECK(p.rank() == parts[0].rank(),
                 "concat: rank mismatch " << shape_str(p.shape()) << " vs "
                                          << shape_str(parts[0].shape()));
    for (int d = 0; d < p.rank(); ++d)
      if (d != a)
        SCESEP_CHECK(p.shape()[d] == out_shape[d],
                     "concat: shape mismatch on axis "
                         << d << ": " << shape_str(p.shape()) << " vs "
                         << shape_str(parts[0].shape()));
    total += p.shape()[a];
    any_grad = any_grad || p.requires_grad();
  }
  out_shape[a] = total;
  Tensor out = Tensor::uninit(out_shape, recording() && any_grad);

  int64_t outer, mid_out, inner;
  axis_split(out_shape, a, &outer, &mid_out, &inner);
  float *po = out.data();
  int64_t at = 0;
  for (const Tensor &p : parts) {
    const int64_t mid = p.shape()[a];
    const float *pp = p.data();
    for (int64_t o = 0; o < outer; ++o)
      std::memcpy(po + (o * mid_out + at) * inner, pp + o * mid * inner,
                  sizeof(float) * mid * inner);
    at += mid;
  }

  if (out.requires_grad()) {
    std::vector<NodePtr> nodes;
    std::vector<int64_t> mids;
    for (const Tensor &p : parts) {
      nodes.push_back(p.node());
      mids.push_back(p.shape()[a]);
    }
    NodePtr on = out.node();
    Tape::active()->record([nodes, mids, on, outer, mid_out, inner] {
      const float *g = on->grad.data();
      int64_t at2 = 0;
      for (size_t pi = 0; pi < nodes.size(); ++pi) {
        const int64_t mid = mids[pi];
        if (nodes[pi]->requires_grad) {
          float *gt = nodes[pi]->grad.data();
          for (int64_t o = 0; o < outer; ++o)
            for (int64_t m = 0; m < mid; ++m)
              for (int64_t i = 0; i < inner; ++i)
                gt[(o * mid + m) * inner + i] +=
                    g[(o * mid_out + at2 + m) * inner + i];
        }
        at2 += mid;
      }
    }, on);
  }
  return out;
}

namespace {

void transpose_copy(const float *src, float *dst, int64_t outer, int64_t d0,
                    int64_t mid, int64_t d1, int64_t inner) {
  // src shape (outer, d0, mid, d1, inner) -> dst (outer, d1, mid, d0, inner)
  for (int64_t o = 0; o < outer; ++o)
    for (int64_t i0 = 0; i0 < d0; ++i0)
      for (int64_t m = 0; m < mid; ++m)
        for (int64_t i1 = 0; i1 < d1; ++i1)
          std::memcpy(
              dst + ((((o * d1 + i1) * mid + m) * d0 + i0) * inner),
              src + ((((o * d0 + i0) * mid + m) * d1 + i1) * inner),
              sizeof(float) * inner);
}

}  // namespace

Tensor transpose(const Tensor &t, int axis0, int axis1) {
  int a0 = normalize_axis(axis0, t.rank(), t.shape());
  int a1 = normalize_axis(axis1, t.rank(), t.shape());
  if (a0 == a1) return reshape(t, t.shape());
  if (a0 > a1) std::swap(a0, a1);
  const Shape &s = t.shape();
  Shape out_shape = s;
  std::swap(out_shape[a0], out_shape[a1]);

  int64_t outer = 1, mid = 1, inner = 1;
  for (int i = 0; i < a0; ++i) outer *= s[i];
  for (int i = a0 + 1; i < a1; ++i) mid *= s[i];
  for (size_t i = a1 + 1; i < s.size(); ++i) inner *= s[i];
  const int64_t d0 = s[a0], d1 = s[a1];

  Tensor out = Tensor::uninit(out_shape, want_grad(t));
  transpose_copy(t.data(), out.data(), outer, d0, mid, d1, inner);

  if (out.requires_grad()) {
    NodePtr tn = t.node(), on = out.node();
    Tape::active()->record([tn, on, outer, d0, mid, d1, inner] {
      // Transposing the gradient back; accumulate via a temp buffer.
      std::vector<float> tmp(tn->data.size());
      transpose_copy(on->grad.data(), tmp.data(), outer, d1, mid, d0, inner);
      float *gt = tn->grad.data();
      for (size_t i = 0; i < tmp.size(); ++i) gt[i] += tmp[i];
    }, on);
  }
  return out;
}

namespace {

// Leading-dims broadcast descriptor for batched matmul.
struct BatchMap {
  Shape lead;                    // broadcast leading dims
  std::vector<int64_t> sa, sb;   // per-lead-dim slice strides (in slices)
  int64_t batches;
};

BatchMap batch_map(const Shape &a, const Shape &b, const char *op) {
  Shape la(a.begin(), a.end() - 2), lb(b.begin(), b.end() - 2);
  Bcast bc = broadcast(la, lb, op);
  BatchMap m;
  m.lead = bc.out;
  m.sa = bc.sa;
  m.sb = bc.sb;
  m.batches = shape_numel(bc.out);
  return m;
}

template <typename PerSlice>
void for_each_batch(const BatchMap &m, PerSlice &&f) {
  const int r = static_cast<int>(m.lead.size());
  if (r == 0) {
    f(0, 0, 0);
    return;
  }
  std::vector<int64_t> idx(r, 0);
  int64_t oa = 0, ob = 0;
  for (int64_t lin = 0; lin < m.batches; ++lin) {
    f(lin, oa, ob);
    for (int d = r - 1; d >= 0; --d) {
      ++idx[d];
      oa += m.sa[d];
      ob += m.sb[d];
      if (idx[d] < m.lead[d]) break;
      oa -= m.sa[d] * m.lead[d];
      ob -= m.sb[d] * m.lead[d];
      idx[d] = 0;
    }
  }
}

}  // namespace

Tensor matmul(const Tensor &a, const Tensor &b) {
  SCESEP_CHECK(a.rank() >= 2 && b.rank() >= 2,
               "matmul: inputs must have rank >= 2, got "
                   << shape_str(a.shape()) << " and " << shape_str(b.shape()));
  const Shape &sa = a.shape(), &sb = b.shape();
  const int64_t m = sa[sa.size() - 2], k = sa[sa.size() - 1];
  const int64_t kb = sb[sb.size() - 2], n = sb[sb.size() - 1];
  SCESEP_CHECK(k == kb, "matmul: inner dimensions disagree, "
                            << shape_str(sa) << " x " << shape_str(sb));
  BatchMap bm = batch_map(sa, sb, "matmul");
  Shape out_shape = bm.lead;
  out_shape.push_back(m);
  out_shape.push_back(n);

  Tensor out = Tensor::uninit(out_shape, want_grad(a, b));
  const float *pa = a.data();
  const float *pb = b.data();
  float *po = out.data();
  for_each_batch(bm, [&](int64_t lin, int64_t ia, int64_t ib) {
    gemm_nn(m, k, n, pa + ia * m * k, pb + ib * k * n, po + lin * m * n,
            false);
  });
  check_finite(out, "matmul");

  if (out.requires_grad()) {
    NodePtr an = a.node(), bn = b.node(), on = out.node();
    Tape::active()->record([an, bn, on, bm, m, k, n] {
      const float *g = on->grad.data();
      for_each_batch(bm, [&](int64_t lin, int64_t ia, int64_t ib) {
        const float *gs = g + lin * m * n;
        if (an->requires_grad)  // dA = dC * B^T
          gemm_nt(m, n, k, gs, bn->data.data() + ib * k * n,
                  an->grad.data() + ia * m * k, true);
        if (bn->requires_grad)  // dB = A^T * dC
          gemm_tn(k, m, n, an->data.data() + ia * m * k, gs,
                  bn->grad.data() + ib * k * n, true);
      });
    }, on);
  }
  return out;
}

Tensor matmul_nt(const Tensor &a, const Tensor &b) {
  SCESEP_CHECK(a.rank() >= 2 && b.rank() >= 2,
               "matmul_nt: inputs must have rank >= 2, got "
                   << shape_str(a.shape()) << " and " << shape_str(b.shape()));
  const Shape &sa = a.shape(), &sb = b.shape();
  const int64_t m = sa[sa.size() - 2], k = sa[sa.size() - 1];
  const int64_t n = sb[sb.size() - 2], kb = sb[sb.size() - 1];
  SCESEP_CHECK(k == kb, "matmul_nt: inner dimensions disagree, "
                            << shape_str(sa) << " x " << shape_str(sb)
                            << " (rhs is transposed)");
  BatchMap bm = batch_map(sa, sb, "matmul_nt");
  Shape out_shape = bm.lead;
  out_shape.push_back(m);
  out_shape.push_back(n);

  Tensor out = Tensor::uninit(out_shape, want_grad(a, b));
  const float *pa = a.data();
  const float *pb = b.data();
  float *po = out.data();
  for_each_batch(bm, [&](int64_t lin, int64_t ia, int64_t ib) {
    gemm_nt(m, k, n, pa + ia * m * k, pb + ib * n * k, po + lin * m * n,
            false);
  });
  check_finite(out, "matmul_nt");

  if (out.requires_grad()) {
    NodePtr an = a.node(), bn = b.node(), on = out.node();
    Tape::active()->record([an, bn, on, bm, m, k, n] {
      const float *g = on->grad.data();
      for_each_batch(bm, [&](int64_t lin, int64_t ia, int64_t ib) {
        const float *gs = g + lin * m * n;
        if (an->requires_grad)  // dA = dC * B
          gemm_nn(m, n, k, gs, bn->data.data() + ib * n * k,
                  an->grad.data() + ia * m * k, true);
        if (bn->requires_grad)  // dB = dC^T * A
          gemm_tn(n, m, k, gs, an->data.data() + ia * m * k,
                  bn->grad.data() + ib * n * k, true);
      });
    }, on);
  }
  return out;
}

Tensor pairwise_dot(const Tensor &vi, const Tensor &vo) {
  SCESEP_CHECK(vi.rank() == 4, "pairwise_dot: vi must be [B,T,F,E], got "
                                   << shape_str(vi.shape()));
  SCESEP_CHECK(vo.rank() == 3, "pairwise_dot: vo must be [B,M,E], got "
                                   << shape_str(vo.shape()));
  const int64_t B = vi.shape()[0], T = vi.shape()[1], F = vi.shape()[2],
                E = vi.shape()[3];
  const int64_t M = vo.shape()[1];
  SCESEP_CHECK(vo.shape()[0] == B && vo.shape()[2] == E,
               "pairwise_dot: incompatible shapes " << shape_str(vi.shape())
                                                    << " and "
                                                    << shape_str(vo.shape()));
  Tensor out = Tensor::uninit({B, T, F, M}, want_grad(vi, vo));
  const float *pi = vi.data();
  const float *po_tab = vo.data();
  float *pd = out.data();
  const int64_t rows = B * T * F;
  parallel_for(
      0, rows,
      [&](int64_t r0, int64_t r1) {
        for (int64_t r = r0; r < r1; ++r) {
          const int64_t b = r / (T * F);
          const float *vrow = pi + r * E;
          float *drow = pd + r * M;
          const float *tab = po_tab + b * M * E;
          for (int64_t mm = 0; mm < M; ++mm) {
            const float *orow = tab + mm * E;
            double s0 = 0.0, s1 = 0.0;
            int64_t e = 0;
            for (; e + 2 <= E; e += 2) {
              s0 += static_cast<double>(vrow[e]) * orow[e];
              s1 += static_cast<double>(vrow[e + 1]) * orow[e + 1];
            }
            for (; e < E; ++e) s0 += static_cast<double>(vrow[e]) * orow[e];
            drow[mm] = static_cast<float>(s0 + s1);
          }
        }
      },
      (rows * M * E >= (1 << 18)) ? 1 : rows);
  check_finite(out, "pairwise_dot");

  if (out.requires_grad()) {
    NodePtr in_ = vi.node(), on_ = vo.node(), dn = out.node();
    Tape::active()->record([in_, on_, dn, B, T, F, M, E] {
      const float *g = dn->grad.data();
      const int64_t rows = B * T * F;
      if (in_->requires_grad) {
        float *gi = in_->grad.data();
        const float *tab = on_->data.data();
        parallel_for(
            0, rows,
            [&](int64_t r0, int64_t r1) {
              for (int64_t r = r0; r < r1; ++r) {
                const int64_t b = r / (T * F);
                const float *grow = g + r * M;
                float *girow = gi + r * E;
                const float *tb = tab + b * M * E;
                for (int64_t mm = 0; mm < M; ++mm) {
                  const float gv = grow[mm];
                  const float *orow = tb + mm * E;
                  for (int64_t e = 0; e < E; ++e) girow[e] += gv * orow[e];
                }
              }
            },
            (rows * M * E >= (1 << 18)) ? 1 : rows);
      }
      if (on_->requires_grad) {
        float *go = on_->grad.data();
        const float *vin = in_->data.data();
        // Parallel over (b, m); each output row is owned by one thread.
        parallel_for(
            0, B * M,
            [&](int64_t p0, int64_t p1) {
              for (int64_t p = p0; p < p1; ++p) {
                const int64_t b = p / M, mm = p % M;
                std::vector<double> acc(static_cast<size_t>(E), 0.0);
                const int64_t base = b * T * F;
                for (int64_t r = base; r < base + T * F; ++r) {
                  const double gv = g[r * M + mm];
                  const float *vrow = vin + r * E;
                  for (int64_t e = 0; e < E; ++e) acc[e] += gv * vrow[e];
                }
                float *gorow = go + (b * M + mm) * E;
                for (int64_t e = 0; e < E; ++e)
                  gorow[e] += static_cast<float>(acc[e]);
              }
            },
            (B * M * T * F * E >= (1 << 18)) ? 1 : B * M);
      }
    }, dn);
  }
  return out;
}

Tensor gather_rows(const Tensor &table, const std::vector<int64_t> &rows) {
  SCESEP_CHECK(table.rank() == 2, "gather_rows: table must be [C,E], got "
                                      << shape_str(table.shape()));
  const int64_t C = table.shape()[0], E = table.shape()[1];
  const int64_t N = static_cast<int64_t>(rows.size());
  SCESEP_CHECK(N > 0, "gather_rows: empty index list");
  for (int64_t i = 0; i < N; ++i)
    SCESEP_CHECK(rows[i] >= 0 && rows[i] < C,
                 "gather_rows: index " << rows[i] << " out of range [0, " << C
                                       << ")");
  Tensor out = Tensor::uninit({N, E}, want_grad(table));
  const float *pt = table.data();
  float *po = out.data();
  for (int64_t i = 0; i < N; ++i)
    std::memcpy(po + i * E, pt + rows[i] * E, sizeof(float) * E);
  if (out.requires_grad()) {
    NodePtr tn = table.node(), on = out.node();
    auto idx = rows;
    Tape::active()->record([tn, on, idx, E] {
      const float *g = on->grad.data();
      float *gt = tn->grad.data();
      for (size_t i = 0; i < idx.size(); ++i) {
        const float *gs = g + static_cast<int64_t>(i) * E;
        float *gd = gt + idx[i] * E;
        for (int64_t e = 0; e < E; ++e) gd[e] += gs[e];
      }
    }, on);
  }
  return out;
}

}  // namespace ag
}  // namespace scesep
