// scesep/dsp/fft.h

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

#ifndef SCESEP_DSP_FFT_H_
#define SCESEP_DSP_FFT_H_

#include <complex>
#include <cstdint>
#include <vector>

namespace scesep {
namespace dsp {

// Iterative radix-2 FFT with precomputed twiddles and bit-reversal table.
// Size must be a power of two.  inverse() includes the 1/N scaling.
class Fft {
 public:
  explicit Fft(int n);

  int size() const { return n_; }
  void forward(std::complex<double> *x) const;
  void inverse(std::complex<double> *x) const;

 private:
  void run(std::complex<double> *x, bool inverse) const;

  int n_;
  int levels_;
  std::vector<int> bitrev_;
  std::vector<std::complex<double>> twiddle_;  // e^{-2pi i k / n}, k < n/2
};

bool is_power_of_two(int64_t n);

}  // namespace dsp
}  // namespace scesep

#endif  // SCESEP_DSP_FFT_H_
