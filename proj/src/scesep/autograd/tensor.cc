// scesep/autograd/tensor.cc

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

#include "scesep/autograd/tensor.h"

#include <atomic>
#include <sstream>

#include "scesep/base/error.h"

namespace scesep {
namespace ag {

namespace {

std::atomic<bool> g_debug_checks{false};

void validate_shape(const Shape &s) {
  for (int64_t d : s)
    SCESEP_CHECK(d > 0, "tensor dimensions must be positive, got shape "
                            << shape_str(s));
}

std::shared_ptr<detail::Node> make_node(Shape shape, bool requires_grad) {
  validate_shape(shape);
  auto n = std::make_shared<detail::Node>();
  const int64_t count = shape_numel(shape);
  n->shape = std::move(shape);
  n->data.resize(static_cast<size_t>(count));
  n->requires_grad = requires_grad;
  if (requires_grad) n->grad.assign(static_cast<size_t>(count), 0.0f);
  return n;
}

}  // namespace

int64_t shape_numel(const Shape &s) {
  int64_t n = 1;
  for (int64_t d : s) n *= d;
  return n;
}

std::string shape_str(const Shape &s) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) os << "x";
    os << s[i];
  }
  os << "]";
  return os.str();
}

bool same_shape(const Shape &a, const Shape &b) { return a == b; }

Tensor Tensor::zeros(Shape shape, bool requires_grad) {
  return Tensor(make_node(std::move(shape), requires_grad));
}

Tensor Tensor::full(Shape shape, float value, bool requires_grad) {
  Tensor t(make_node(std::move(shape), requires_grad));
  std::fill(t.node_->data.begin(), t.node_->data.end(), value);
  return t;
}

Tensor Tensor::from(Shape shape, std::vector<float> values,
                    bool requires_grad) {
  validate_shape(shape);
  SCESEP_CHECK(shape_numel(shape) == static_cast<int64_t>(values.size()),
               "value count " << values.size() << " does not match shape "
                              << shape_str(shape));
  auto n = std::make_shared<detail::Node>();
  n->shape = std::move(shape);
  n->data = std::move(values);
  n->requires_grad = requires_grad;
  if (requires_grad) n->grad.assign(n->data.size(), 0.0f);
  return Tensor(std::move(n));
}

Tensor Tensor::scalar(float value) { return from({}, {value}); }

Tensor Tensor::uninit(Shape shape, bool requires_grad) {
  return Tensor(make_node(std::move(shape), requires_grad));
}

int64_t Tensor::dim(int i) const {
  const int r = rank();
  if (i < 0) i += r;
  SCESEP_CHECK(i >= 0 && i < r,
               "axis " << i << " out of range for shape " << shape_str(shape()));
  return node_->shape[i];
}

float *Tensor::grad() {
  return node_->requires_grad ? node_->grad.data() : nullptr;
}

const float *Tensor::grad() const {
  return node_->requires_grad ? node_->grad.data() : nullptr;
}

void Tensor::zero_grad() {
  if (node_->requires_grad)
    std::fill(node_->grad.begin(), node_->grad.end(), 0.0f);
}

float Tensor::item() const {
  SCESEP_CHECK(numel() == 1,
               "item() requires a scalar, got shape " << shape_str(shape()));
  return node_->data[0];
}

void set_debug_checks(bool enabled) { g_debug_checks.store(enabled); }
bool debug_checks_enabled() { return g_debug_checks.load(); }

}  // namespace ag
}  // namespace scesep
