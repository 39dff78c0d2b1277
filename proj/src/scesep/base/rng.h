// scesep/base/rng.h

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

#ifndef SCESEP_BASE_RNG_H_
#define SCESEP_BASE_RNG_H_

#include <cstdint>

namespace scesep {

// xoshiro256** seeded through splitmix64.  Self-contained so that seeded
// runs are bit-identical regardless of the standard library in use.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t u64();
  // Uniform integer in [0, n).  n must be > 0.
  uint64_t below(uint64_t n);
  // Uniform double in [0, 1).
  double uniform();
  // Uniform double in [lo, hi).
  double uniform(double lo, double hi);
  // Standard normal via Box-Muller.
  double normal();

  // Mixes a base seed with a stream index into a fresh seed.  Used to give
  // every training step / evaluation item its own independent stream.
  static uint64_t mix(uint64_t seed, uint64_t stream);

 private:
  uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace scesep

#endif  // SCESEP_BASE_RNG_H_
