// scesep/base/parallel.h

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

#ifndef SCESEP_BASE_PARALLEL_H_
#define SCESEP_BASE_PARALLEL_H_

#include <cstdint>
#include <functional>

namespace scesep {

// Number of worker threads used by internal kernels and the evaluation
// harness.  Defaults to the hardware concurrency, capped by the
// SCESEP_THREADS environment variable (read once).
int worker_threads();

// Runs fn(begin..end) partitioned into contiguous blocks over the worker
// pool.  Each index is processed by exactly one thread, so kernels that
// write disjoint output ranges stay bit-deterministic regardless of the
// thread count.  Falls back to a serial loop for small ranges.
void parallel_for(int64_t begin, int64_t end,
                  const std::function<void(int64_t, int64_t)> &fn,
                  int64_t min_block = 1);

// While alive, parallel_for on this thread runs inline (no pool).  Used by
// timing harnesses where scheduler noise would drown the measurement.
class SerialSection {
 public:
  SerialSection();
  ~SerialSection();
  SerialSection(const SerialSection &) = delete;
  SerialSection &operator=(const SerialSection &) = delete;

 private:
  bool previous_;
};

}  // namespace scesep

#endif  // SCESEP_BASE_PARALLEL_H_
