// scesep/autograd/tensor.h

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

#ifndef SCESEP_AUTOGRAD_TENSOR_H_
#define SCESEP_AUTOGRAD_TENSOR_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace scesep {
namespace ag {

// Row-major contiguous shapes.  Rank 0 denotes a scalar (numel 1).
using Shape = std::vector<int64_t>;

int64_t shape_numel(const Shape &s);
std::string shape_str(const Shape &s);
bool same_shape(const Shape &a, const Shape &b);

namespace detail {

// Storage node shared by Tensor handles and tape closures.  Data is
// immutable once an op has produced it; only grad is written afterwards.
struct Node {
  Shape shape;
  std::vector<float> data;
  std::vector<float> grad;  // allocated iff requires_grad
  bool requires_grad = false;
};

}  // namespace detail

// Value-semantic handle onto a dense float32 tensor.  Copies share storage.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(Shape shape, bool requires_grad = false);
  static Tensor full(Shape shape, float value, bool requires_grad = false);
  static Tensor from(Shape shape, std::vector<float> values,
                     bool requires_grad = false);
  static Tensor scalar(float value);
  // Allocated but uninitialized data; for op outputs that are filled
  // immediately after creation.
  static Tensor uninit(Shape shape, bool requires_grad);

  bool defined() const { return node_ != nullptr; }
  const Shape &shape() const { return node_->shape; }
  int rank() const { return static_cast<int>(node_->shape.size()); }
  int64_t dim(int i) const;
  int64_t numel() const { return static_cast<int64_t>(node_->data.size()); }

  float *data() { return node_->data.data(); }
  const float *data() const { return node_->data.data(); }
  bool requires_grad() const { return node_->requires_grad; }
  float *grad();
  const float *grad() const;
  void zero_grad();

  // Scalar read; requires numel() == 1.
  float item() const;

  std::vector<float> to_vector() const { return node_->data; }

  std::shared_ptr<detail::Node> node() const { return node_; }

 private:
  explicit Tensor(std::shared_ptr<detail::Node> n) : node_(std::move(n)) {}
  std::shared_ptr<detail::Node> node_;
};

// Optional NaN/Inf detection applied to every op output.  Off by default.
void set_debug_checks(bool enabled);
bool debug_checks_enabled();

}  // namespace ag
}  // namespace scesep

#endif  // SCESEP_AUTOGRAD_TENSOR_H_
