// scesep/nn/adam.cc

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

#include "scesep/nn/adam.h"

#include <cmath>

#include "scesep/base/error.h"

namespace scesep {
namespace nn {

Adam::Adam(std::vector<ag::Tensor> params, AdamConfig config)
    : params_(std::move(params)), config_(config) {
  m_.reserve(params_.size());
  v_.reserve(params_.size());
  for (const ag::Tensor &p : params_) {
    SCESEP_CHECK(p.requires_grad(),
                 "Adam: parameter without gradient buffer, shape "
                     << ag::shape_str(p.shape()));
    m_.emplace_back(p.numel(), 0.0f);
    v_.emplace_back(p.numel(), 0.0f);
  }
}

void Adam::step() {
  ++t_;
  const double b1 = config_.beta1, b2 = config_.beta2;
  const double corr1 = 1.0 - std::pow(b1, static_cast<double>(t_));
  const double corr2 = 1.0 - std::pow(b2, static_cast<double>(t_));
  for (size_t i = 0; i < params_.size(); ++i) {
    ag::Tensor &p = params_[i];
    float *w = p.data();
    float *g = p.grad();
    float *m = m_[i].data();
    float *v = v_[i].data();
    const int64_t n = p.numel();
    for (int64_t j = 0; j < n; ++j) {
      const double gj = g[j];
      const double mj = b1 * m[j] + (1.0 - b1) * gj;
      const double vj = b2 * v[j] + (1.0 - b2) * gj * gj;
      m[j] = static_cast<float>(mj);
      v[j] = static_cast<float>(vj);
      const double mhat = mj / corr1;
      const double vhat = vj / corr2;
      w[j] -= static_cast<float>(config_.lr * mhat /
                                 (std::sqrt(vhat) + config_.epsilon));
      g[j] = 0.0f;
    }
  }
}

void Adam::restore(size_t i, std::vector<float> m, std::vector<float> v) {
  SCESEP_CHECK(i < params_.size(), "Adam::restore: index out of range");
  SCESEP_CHECK(m.size() == m_[i].size() && v.size() == v_[i].size(),
               "Adam::restore: moment size mismatch for parameter " << i);
  m_[i] = std::move(m);
  v_[i] = std::move(v);
}

double clip_global_norm(std::vector<ag::Tensor> &params, double max_norm) {
  double sq = 0.0;
  for (ag::Tensor &p : params) {
    const float *g = p.grad();
    if (!g) continue;
    for (int64_t i = 0; i < p.numel(); ++i)
      sq += static_cast<double>(g[i]) * g[i];
  }
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const float scale = static_cast<float>(max_norm / norm);
    for (ag::Tensor &p : params) {
      float *g = p.grad();
      if (!g) continue;
      for (int64_t i = 0; i < p.numel(); ++i) g[i] *= scale;
    }
  }
  return norm;
}

}  // namespace nn
}  // namespace scesep
