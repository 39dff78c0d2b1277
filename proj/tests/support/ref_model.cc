// tests/support/ref_model.cc

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

#include "support/ref_model.h"

#include <cmath>

#include "scesep/base/error.h"

namespace scesep {
namespace testsupport {

std::vector<double> ref_matmul(const std::vector<double> &a,
                               const std::vector<double> &b, int64_t m,
                               int64_t k, int64_t n) {
  std::vector<double> c(static_cast<size_t>(m * n), 0.0);
  for (int64_t i = 0; i < m; ++i)
    for (int64_t p = 0; p < k; ++p) {
      const double av = a[i * k + p];
      for (int64_t j = 0; j < n; ++j) c[i * n + j] += av * b[p * n + j];
    }
  return c;
}

namespace {

double dsigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

void ref_lstm_step(const RefLstmCell &cell, const std::vector<double> &x_t,
                   int64_t batch, std::vector<double> *h,
                   std::vector<double> *c) {
  const int64_t hd = cell.hidden, d = cell.input;
  std::vector<double> gates(static_cast<size_t>(batch * 4 * hd));
  for (int64_t bi = 0; bi < batch; ++bi)
    for (int64_t g = 0; g < 4 * hd; ++g) {
      double acc = cell.b[g];
      for (int64_t j = 0; j < d; ++j)
        acc += cell.w_x[g * d + j] * x_t[bi * d + j];
      for (int64_t j = 0; j < hd; ++j)
        acc += cell.w_h[g * hd + j] * (*h)[bi * hd + j];
      gates[bi * 4 * hd + g] = acc;
    }
  for (int64_t bi = 0; bi < batch; ++bi)
    for (int64_t j = 0; j < hd; ++j) {
      const double gi = dsigmoid(gates[bi * 4 * hd + j]);
      const double gf = dsigmoid(gates[bi * 4 * hd + hd + j]);
      const double gg = std::tanh(gates[bi * 4 * hd + 2 * hd + j]);
      const double go = dsigmoid(gates[bi * 4 * hd + 3 * hd + j]);
      const double cj = gf * (*c)[bi * hd + j] + gi * gg;
      (*c)[bi * hd + j] = cj;
      (*h)[bi * hd + j] = go * std::tanh(cj);
    }
}

std::vector<double> ref_blstm(const RefLstmCell &fw, const RefLstmCell &bw,
                              const std::vector<double> &x, int64_t batch,
                              int64_t steps) {
  const int64_t d = fw.input, hd = fw.hidden;
  std::vector<double> out(static_cast<size_t>(batch * steps * 2 * hd));

  std::vector<double> h(static_cast<size_t>(batch * hd), 0.0);
  std::vector<double> c(static_cast<size_t>(batch * hd), 0.0);
  std::vector<double> x_t(static_cast<size_t>(batch * d));
  for (int64_t t = 0; t < steps; ++t) {
    for (int64_t bi = 0; bi < batch; ++bi)
      for (int64_t j = 0; j < d; ++j)
        x_t[bi * d + j] = x[(bi * steps + t) * d + j];
    ref_lstm_step(fw, x_t, batch, &h, &c);
    for (int64_t bi = 0; bi < batch; ++bi)
      for (int64_t j = 0; j < hd; ++j)
        out[(bi * steps + t) * 2 * hd + j] = h[bi * hd + j];
  }

  std::fill(h.begin(), h.end(), 0.0);
  std::fill(c.begin(), c.end(), 0.0);
  for (int64_t t = steps - 1; t >= 0; --t) {
    for (int64_t bi = 0; bi < batch; ++bi)
      for (int64_t j = 0; j < d; ++j)
        x_t[bi * d + j] = x[(bi * steps + t) * d + j];
    ref_lstm_step(bw, x_t, batch, &h, &c);
    for (int64_t bi = 0; bi < batch; ++bi)
      for (int64_t j = 0; j < hd; ++j)
        out[(bi * steps + t) * 2 * hd + hd + j] = h[bi * hd + j];
  }
  return out;
}

std::vector<double> ref_dense(const std::vector<double> &w,
                              const std::vector<double> &bias,
                              const std::vector<double> &r, int64_t batch,
                              int64_t steps, int64_t input, int64_t width) {
  std::vector<double> out(static_cast<size_t>(batch * steps * width));
  for (int64_t row = 0; row < batch * steps; ++row)
    for (int64_t j = 0; j < width; ++j) {
      double acc = bias[j];
      for (int64_t i = 0; i < input; ++i)
        acc += r[row * input + i] * w[i * width + j];
      out[row * width + j] = acc;
    }
  return out;
}

double ref_log_sigmoid(double z) {
  // log sigmoid(z) = -softplus(-z)
  if (z < 0.0) return z - std::log1p(std::exp(z));
  return -std::log1p(std::exp(-z));
}

namespace {

struct Cursor {
  const std::vector<double> &buf;
  size_t at = 0;
  std::vector<double> take(int64_t n) {
    SCESEP_CHECK(at + n <= buf.size(), "ref pipeline: parameter underflow");
    std::vector<double> out(buf.begin() + at, buf.begin() + at + n);
    at += n;
    return out;
  }
};

RefLstmCell take_cell(Cursor &cur, int64_t input, int64_t hidden) {
  RefLstmCell cell;
  cell.input = input;
  cell.hidden = hidden;
  cell.w_x = cur.take(4 * hidden * input);
  cell.w_h = cur.take(4 * hidden * hidden);
  cell.b = cur.take(4 * hidden);
  return cell;
}

}  // namespace

int64_t RefPipeline::param_count() const {
  const int64_t f = config.bins, e = config.embed_dim,
                hd = config.dir_hidden(), h = config.hidden,
                c = config.speakers;
  auto cell = [&](int64_t input) {
    return 4 * hd * input + 4 * hd * hd + 4 * hd;
  };
  return 2 * cell(f) + 2 * cell(h) + h * f * e + f * e + c * e;
}

double RefPipeline::loss(const std::vector<double> &params,
                         const std::vector<double> &features,
                         const std::vector<double> &labels,
                         const std::vector<int64_t> &speakers) const {
  const int64_t b = config.batch, t = config.frames, f = config.bins,
                e = config.embed_dim, hd = config.dir_hidden(),
                h = config.hidden, m = sources;
  SCESEP_CHECK(static_cast<int64_t>(params.size()) == param_count(),
               "ref pipeline: wrong parameter count");

  Cursor cur{params};
  const RefLstmCell l1_fw = take_cell(cur, f, hd);
  const RefLstmCell l1_bw = take_cell(cur, f, hd);
  const RefLstmCell l2_fw = take_cell(cur, h, hd);
  const RefLstmCell l2_bw = take_cell(cur, h, hd);
  const std::vector<double> dense_w = cur.take(h * f * e);
  const std::vector<double> dense_b = cur.take(f * e);
  const std::vector<double> table = cur.take(config.speakers * e);

  const std::vector<double> r1 = ref_blstm(l1_fw, l1_bw, features, b, t);
  const std::vector<double> r2 = ref_blstm(l2_fw, l2_bw, r1, b, t);
  const std::vector<double> vi = ref_dense(dense_w, dense_b, r2, b, t, h, f * e);

  double total = 0.0;
  for (int64_t bi = 0; bi < b; ++bi)
    for (int64_t ti = 0; ti < t; ++ti)
      for (int64_t fi = 0; fi < f; ++fi) {
        double bin_loss = 0.0;
        for (int64_t mi = 0; mi < m; ++mi) {
          const int64_t row = speakers[bi * m + mi];
          double dot = 0.0;
          for (int64_t ei = 0; ei < e; ++ei)
            dot += vi[((bi * t + ti) * f + fi) * e + ei] * table[row * e + ei];
          const double y = labels[((bi * t + ti) * f + fi) * m + mi];
          bin_loss += ref_log_sigmoid(y * dot);
        }
        total += -bin_loss / static_cast<double>(m);
      }
  double loss = total / static_cast<double>(b);
  if (config.per_bin_mean) loss /= static_cast<double>(t * f);
  return loss;
}

std::vector<double> flatten_params(const sce::SceModel &model) {
  std::vector<double> out;
  for (const auto &kv : model.named_parameters()) {
    const float *p = kv.second.data();
    out.insert(out.end(), p, p + kv.second.numel());
  }
  return out;
}

std::vector<double> flatten_grads(const sce::SceModel &model) {
  std::vector<double> out;
  for (const auto &kv : model.named_parameters()) {
    const float *g = kv.second.grad();
    SCESEP_CHECK(g != nullptr, "flatten_grads: parameter '"
                                   << kv.first << "' has no gradient");
    out.insert(out.end(), g, g + kv.second.numel());
  }
  return out;
}

}  // namespace testsupport
}  // namespace scesep
