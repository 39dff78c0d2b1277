// scesep/dsp/stft.cc

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

#include "scesep/dsp/stft.h"

#include <algorithm>
#include <cmath>
#include <complex>

#include "scesep/base/error.h"
#include "scesep/dsp/fft.h"

namespace scesep {
namespace dsp {

namespace {

// Periodic Hann (period N, not N-1) so that 50% overlap satisfies COLA.
std::vector<double> hann_periodic(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i)
    w[i] = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / n));
  return w;
}

void check_geometry(int window, int hop) {
  SCESEP_CHECK(window > 0 && is_power_of_two(window),
               "stft: window must be a power of two, got " << window);
  SCESEP_CHECK(hop > 0 && hop <= window,
               "stft: hop must be in (0, window], got hop " << hop
                                                            << " window "
                                                            << window);
}

}  // namespace

int64_t stft_num_frames(int64_t len, int window, int hop) {
  if (len < window) return 0;
  const int64_t full = (len - window) / hop + 1;
  const int64_t covered = (full - 1) * hop + window;
  return full + (covered < len ? 1 : 0);
}

Spectrogram stft(const Waveform &w, int window, int hop) {
  check_geometry(window, hop);
  const int64_t len = w.size();
  SCESEP_CHECK(len >= window, "stft: waveform of " << len
                                                   << " samples is shorter "
                                                      "than one window ("
                                                   << window << ")");
  const int64_t frames = stft_num_frames(len, window, hop);
  const int64_t bins = window / 2 + 1;

  Spectrogram s;
  s.frames = frames;
  s.bins = bins;
  s.window = window;
  s.hop = hop;
  s.sample_rate = w.sample_rate;
  s.source_samples = len;
  s.magnitude.resize(static_cast<size_t>(frames * bins));
  s.phase.resize(static_cast<size_t>(frames * bins));

  const std::vector<double> win = hann_periodic(window);
  const Fft fft(window);
  std::vector<std::complex<double>> buf(window);

  for (int64_t t = 0; t < frames; ++t) {
    const int64_t start = t * hop;
    for (int i = 0; i < window; ++i) {
      const int64_t idx = start + i;
      const double v = (idx < len) ? w.samples[idx] : 0.0;  // zero-pad tail
      buf[i] = {v * win[i], 0.0};
    }
    fft.forward(buf.data());
    for (int64_t f = 0; f < bins; ++f) {
      s.mag(t, f) = static_cast<float>(std::abs(buf[f]));
      s.phi(t, f) = static_cast<float>(std::arg(buf[f]));
    }
  }
  return s;
}

Waveform istft(const Spectrogram &s) {
  check_geometry(s.window, s.hop);
  SCESEP_CHECK(s.frames > 0 && s.bins == s.window / 2 + 1,
               "istft: inconsistent spectrogram geometry, frames "
                   << s.frames << " bins " << s.bins << " window " << s.window);

  const int window = s.window, hop = s.hop;
  const int64_t out_len = (s.frames - 1) * hop + window;
  std::vector<double> acc(static_cast<size_t>(out_len), 0.0);
  std::vector<double> norm(static_cast<size_t>(out_len), 0.0);

  const std::vector<double> win = hann_periodic(window);
  const Fft fft(window);
  std::vector<std::complex<double>> buf(window);

  for (int64_t t = 0; t < s.frames; ++t) {
    for (int64_t f = 0; f < s.bins; ++f) {
      const double m = s.mag(t, f);
      const double p = s.phi(t, f);
      buf[f] = std::polar(m, p);
    }
    for (int64_t f = s.bins; f < window; ++f)
      buf[f] = std::conj(buf[window - f]);
    fft.inverse(buf.data());
    const int64_t start = t * hop;
    for (int i = 0; i < window; ++i) {
      acc[start + i] += buf[i].real() * win[i];
      norm[start + i] += win[i] * win[i];
    }
  }

  Waveform out;
  out.sample_rate = s.sample_rate;
  int64_t len = out_len;
  if (s.source_samples > 0 && s.source_samples < out_len)
    len = s.source_samples;
  out.samples.resize(static_cast<size_t>(len));
  // The window-square sum is >= 0.5 everywhere but the outermost half
  // window; flooring it keeps masked (non-consistent) spectra from blowing
  // up at the edges.
  for (int64_t i = 0; i < len; ++i)
    out.samples[i] =
        static_cast<float>(acc[i] / std::max(norm[i], 1e-2));
  return out;
}

Spectrogram complex_add(const Spectrogram &a, const Spectrogram &b) {
  SCESEP_CHECK(a.frames == b.frames && a.bins == b.bins &&
                   a.window == b.window && a.hop == b.hop &&
                   a.sample_rate == b.sample_rate,
               "complex_add: spectrogram geometry mismatch ("
                   << a.frames << "x" << a.bins << " vs " << b.frames << "x"
                   << b.bins << ")");
  Spectrogram out = a;
  if (b.source_samples > 0 &&
      (out.source_samples == 0 || b.source_samples < out.source_samples))
    out.source_samples = b.source_samples;
  for (size_t i = 0; i < out.magnitude.size(); ++i) {
    const std::complex<double> za =
        std::polar<double>(a.magnitude[i], a.phase[i]);
    const std::complex<double> zb =
        std::polar<double>(b.magnitude[i], b.phase[i]);
    const std::complex<double> z = za + zb;
    out.magnitude[i] = static_cast<float>(std::abs(z));
    out.phase[i] = static_cast<float>(std::arg(z));
  }
  return out;
}

Spectrogram crop_frames(const Spectrogram &s, int64_t start, int64_t count) {
  SCESEP_CHECK(start >= 0 && count > 0 && start + count <= s.frames,
               "crop_frames: range [" << start << ", " << start + count
                                      << ") exceeds " << s.frames
                                      << " frames");
  Spectrogram out;
  out.frames = count;
  out.bins = s.bins;
  out.window = s.window;
  out.hop = s.hop;
  out.sample_rate = s.sample_rate;
  out.source_samples = (count - 1) * s.hop + s.window;
  out.magnitude.assign(s.magnitude.begin() + start * s.bins,
                       s.magnitude.begin() + (start + count) * s.bins);
  out.phase.assign(s.phase.begin() + start * s.bins,
                   s.phase.begin() + (start + count) * s.bins);
  return out;
}

}  // namespace dsp
}  // namespace scesep
