// scesep/nn/adam.h

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

#ifndef SCESEP_NN_ADAM_H_
#define SCESEP_NN_ADAM_H_

#include <cstdint>
#include <vector>

#include "scesep/autograd/tensor.h"

namespace scesep {
namespace nn {

struct AdamConfig {
  float lr = 1e-3f;
  float beta1 = 0.9f;
  float beta2 = 0.999f;
  float epsilon = 1e-8f;
};

// Adam with bias correction.  Holds first/second moment buffers per
// parameter, mirroring the parameter shapes.  step() consumes and zeroes
// the parameter gradients.
class Adam {
 public:
  Adam(std::vector<ag::Tensor> params, AdamConfig config);

  void step();

  int64_t step_count() const { return t_; }
  const AdamConfig &config() const { return config_; }
  size_t num_params() const { return params_.size(); }

  // Moment access for checkpointing; buffers track parameter order.
  const std::vector<float> &moment1(size_t i) const { return m_[i]; }
  const std::vector<float> &moment2(size_t i) const { return v_[i]; }
  void restore(size_t i, std::vector<float> m, std::vector<float> v);
  void set_step_count(int64_t t) { t_ = t; }

 private:
  std::vector<ag::Tensor> params_;
  std::vector<std::vector<float>> m_, v_;
  AdamConfig config_;
  int64_t t_ = 0;
};

// Scales all parameter gradients so their global L2 norm is at most
// max_norm.  Returns the norm before clipping.
double clip_global_norm(std::vector<ag::Tensor> &params, double max_norm);

}  // namespace nn
}  // namespace scesep

#endif  // SCESEP_NN_ADAM_H_
