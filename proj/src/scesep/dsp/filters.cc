// scesep/dsp/filters.cc

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

#include "scesep/dsp/filters.h"

#include <cmath>
#include <numeric>
#include <vector>

#include "scesep/base/error.h"

namespace scesep {
namespace dsp {

namespace {

constexpr int kTapsPerPhase = 64;
constexpr double kKaiserBeta = 8.6;

// Modified Bessel function of the first kind, order zero (series form).
double bessel_i0(double x) {
  double sum = 1.0, term = 1.0;
  const double q = x * x / 4.0;
  for (int k = 1; k < 64; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

double sinc(double x) {
  if (std::fabs(x) < 1e-12) return 1.0;
  const double px = M_PI * x;
  return std::sin(px) / px;
}

}  // namespace

Waveform resample(const Waveform &w, int target_rate) {
  SCESEP_CHECK(target_rate > 0, "resample: target rate must be positive, got "
                                    << target_rate);
  SCESEP_CHECK(w.sample_rate > 0, "resample: source rate must be positive");
  if (target_rate == w.sample_rate) return w;

  const int64_t g = std::gcd<int64_t>(w.sample_rate, target_rate);
  const int64_t up = target_rate / g;    // L
  const int64_t down = w.sample_rate / g;  // M
  SCESEP_CHECK(up <= 65536, "resample: upsampling factor " << up
                                                           << " too large for "
                                                              "rational "
                                                              "polyphase");

  // Prototype lowpass at the upsampled rate L*fs; cutoff at the smaller of
  // the source and target Nyquist frequencies.
  const int64_t half = static_cast<int64_t>(kTapsPerPhase / 2) * up;
  const int64_t filt_len = 2 * half + 1;
  const double cutoff = 0.5 * std::min(1.0 / up, 1.0 / down);
  const double inv_i0 = 1.0 / bessel_i0(kKaiserBeta);
  std::vector<double> h(static_cast<size_t>(filt_len));
  for (int64_t i = 0; i < filt_len; ++i) {
    const double n = static_cast<double>(i - half);
    const double frac = n / static_cast<double>(half + 1);
    const double kaiser =
        bessel_i0(kKaiserBeta * std::sqrt(std::max(0.0, 1.0 - frac * frac))) *
        inv_i0;
    h[i] = 2.0 * cutoff * sinc(2.0 * cutoff * n) * kaiser;
  }

  const int64_t in_len = w.size();
  const int64_t out_len = static_cast<int64_t>(std::llround(
      static_cast<double>(in_len) * target_rate / w.sample_rate));

  Waveform out;
  out.sample_rate = target_rate;
  out.samples.resize(static_cast<size_t>(out_len));
  const double gain = static_cast<double>(up);

  for (int64_t m = 0; m < out_len; ++m) {
    // Output m sits at upsampled index u = m * M; taps hit input j where
    // |u - j*L| <= half.
    const int64_t u = m * down;
    int64_t j_lo = (u - half + up - 1) / up;  // ceil((u - half) / L)
    int64_t j_hi = (u + half) / up;           // floor((u + half) / L)
    if (j_lo < 0) j_lo = 0;
    if (j_hi > in_len - 1) j_hi = in_len - 1;
    double acc = 0.0;
    for (int64_t j = j_lo; j <= j_hi; ++j)
      acc += static_cast<double>(w.samples[j]) * h[u - j * up + half];
    out.samples[m] = static_cast<float>(gain * acc);
  }
  return out;
}

Waveform preemphasis(const Waveform &w, float a) {
  SCESEP_CHECK(std::fabs(a) < 1.0f, "preemphasis: |a| must be < 1, got " << a);
  Waveform out;
  out.sample_rate = w.sample_rate;
  out.samples.resize(w.samples.size());
  double prev = 0.0;
  for (size_t i = 0; i < w.samples.size(); ++i) {
    out.samples[i] = static_cast<float>(w.samples[i] - a * prev);
    prev = w.samples[i];
  }
  return out;
}

Waveform deemphasis(const Waveform &w, float a) {
  SCESEP_CHECK(std::fabs(a) < 1.0f, "deemphasis: |a| must be < 1, got " << a);
  Waveform out;
  out.sample_rate = w.sample_rate;
  out.samples.resize(w.samples.size());
  double prev = 0.0;
  for (size_t i = 0; i < w.samples.size(); ++i) {
    prev = w.samples[i] + a * prev;
    out.samples[i] = static_cast<float>(prev);
  }
  return out;
}

}  // namespace dsp
}  // namespace scesep
