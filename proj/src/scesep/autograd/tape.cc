// scesep/autograd/tape.cc

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

#include "scesep/autograd/tape.h"

#include "scesep/base/error.h"

namespace scesep {
namespace ag {

namespace {
thread_local Tape *g_active_tape = nullptr;
}

Tape::Tape() : previous_(g_active_tape) { g_active_tape = this; }

Tape::~Tape() { g_active_tape = previous_; }

Tape *Tape::active() { return g_active_tape; }

void Tape::record(std::function<void()> backward_fn,
                  std::shared_ptr<detail::Node> output) {
  ops_.push_back({std::move(backward_fn), std::move(output)});
}

void Tape::backward(const Tensor &loss) {
  SCESEP_CHECK(loss.defined(), "backward: undefined loss tensor");
  SCESEP_CHECK(loss.numel() == 1, "backward requires a scalar loss, got shape "
                                      << shape_str(loss.shape()));
  for (Op &op : ops_)
    if (op.output && op.output->requires_grad)
      std::fill(op.output->grad.begin(), op.output->grad.end(), 0.0f);
  auto node = loss.node();
  if (node->requires_grad) node->grad[0] += 1.0f;
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) it->backward_fn();
}

}  // namespace ag
}  // namespace scesep
