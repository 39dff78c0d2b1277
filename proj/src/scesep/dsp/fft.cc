// scesep/dsp/fft.cc

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

#include "scesep/dsp/fft.h"

#include <cmath>

#include "scesep/base/error.h"

namespace scesep {
namespace dsp {

bool is_power_of_two(int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

Fft::Fft(int n) : n_(n) {
  SCESEP_CHECK(is_power_of_two(n), "Fft: size must be a power of two, got "
                                       << n);
  levels_ = 0;
  while ((1 << levels_) < n) ++levels_;

  bitrev_.resize(n);
  for (int i = 0; i < n; ++i) {
    int r = 0;
    for (int b = 0; b < levels_; ++b)
      if (i & (1 << b)) r |= 1 << (levels_ - 1 - b);
    bitrev_[i] = r;
  }

  twiddle_.resize(n / 2);
  for (int k = 0; k < n / 2; ++k) {
    const double a = -2.0 * M_PI * k / n;
    twiddle_[k] = {std::cos(a), std::sin(a)};
  }
}

void Fft::run(std::complex<double> *x, bool inverse) const {
  for (int i = 0; i < n_; ++i) {
    const int j = bitrev_[i];
    if (j > i) std::swap(x[i], x[j]);
  }
  for (int size = 2; size <= n_; size <<= 1) {
    const int half = size / 2;
    const int step = n_ / size;
    for (int start = 0; start < n_; start += size) {
      for (int k = 0; k < half; ++k) {
        std::complex<double> w = twiddle_[k * step];
        if (inverse) w = std::conj(w);
        const std::complex<double> t = w * x[start + k + half];
        const std::complex<double> u = x[start + k];
        x[start + k] = u + t;
        x[start + k + half] = u - t;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / n_;
    for (int i = 0; i < n_; ++i) x[i] *= scale;
  }
}

void Fft::forward(std::complex<double> *x) const { run(x, false); }
void Fft::inverse(std::complex<double> *x) const { run(x, true); }

}  // namespace dsp
}  // namespace scesep
