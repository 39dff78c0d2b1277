// scesep/autograd/tape.h

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

#ifndef SCESEP_AUTOGRAD_TAPE_H_
#define SCESEP_AUTOGRAD_TAPE_H_

#include <functional>
#include <vector>

#include "scesep/autograd/tensor.h"

namespace scesep {
namespace ag {

// Define-by-run gradient tape.  Constructing a Tape makes it the active
// tape of the current thread; ops record backward closures onto it while
// it is alive.  One tape per thread; tapes must be destroyed in reverse
// construction order (plain scoping).
class Tape {
 public:
  Tape();
  ~Tape();

  Tape(const Tape &) = delete;
  Tape &operator=(const Tape &) = delete;

  // The active tape of this thread, or nullptr outside any Tape scope.
  static Tape *active();

  // Records one op's backward rule together with the op's output node.
  // Closures own shared_ptrs to whatever nodes they touch, keeping the
  // graph alive until the tape dies.
  void record(std::function<void()> backward_fn,
              std::shared_ptr<detail::Node> output);

  // Replays every recorded op in reverse order.  loss must be scalar.
  // Intermediate (op output) gradients are reset and re-seeded with
  // d(loss)/d(loss) = 1 on every call, so leaf gradients accumulate
  // across repeated calls.
  void backward(const Tensor &loss);

  size_t num_ops() const { return ops_.size(); }

 private:
  struct Op {
    std::function<void()> backward_fn;
    std::shared_ptr<detail::Node> output;
  };
  std::vector<Op> ops_;
  Tape *previous_ = nullptr;
};

}  // namespace ag
}  // namespace scesep

#endif  // SCESEP_AUTOGRAD_TAPE_H_
