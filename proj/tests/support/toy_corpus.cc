// tests/support/toy_corpus.cc

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

#include "support/toy_corpus.h"

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "scesep/base/error.h"
#include "scesep/base/rng.h"
#include "scesep/dsp/fft.h"

namespace scesep {
namespace testsupport {

namespace fs = std::filesystem;

std::vector<ToyBand> toy_inset_bands() {
  // The four bands tile the spectrum (40 Hz guard gaps) so every STFT bin
  // has a clear nearby owner; the loudest-source labels then behave as a
  // true oracle instead of racing far-field leakage at unowned bins.
  return {{"s01", 'F', 40.0, 1230.0, 0.16},
          {"s02", 'F', 1270.0, 2480.0, 0.04},
          {"s03", 'M', 2520.0, 3730.0, 0.01},
          {"s04", 'M', 3770.0, 4960.0, 0.0025}};
}

std::vector<ToyBand> toy_outset_bands() {
  // Unseen speakers: narrower bands sitting inside single training bands,
  // so their spectra are new but not out-of-distribution for the model.
  return {{"x01", 'F', 200.0, 1000.0, 0.08},
          {"x02", 'M', 2700.0, 3500.0, 0.005}};
}

dsp::Waveform toy_utterance(const ToyBand &band, double duration_s,
                            int sample_rate, uint64_t seed) {
  Rng rng(seed);
  const int64_t n = static_cast<int64_t>(duration_s * sample_rate);

  int64_t fft_n = 1;
  while (fft_n < n) fft_n <<= 1;
  const dsp::Fft fft(static_cast<int>(fft_n));

  // Random-phase spectrum, hermitian so the inverse transform is real.
  // The magnitude is a smooth deterministic envelope: full scale inside
  // the band with raised-cosine edge tapers, the speaker's broadband floor
  // elsewhere.  Randomness lives in the phases (and in the time-domain
  // modulation below), so per-bin loudness comparisons between speakers
  // are never decided by texture noise.
  const double edge_hz = 50.0;
  std::vector<std::complex<double>> spec(fft_n, {0.0, 0.0});
  for (int64_t k = 1; k < fft_n / 2; ++k) {
    const double hz = static_cast<double>(k) * sample_rate / fft_n;
    double taper = 0.0;
    if (hz >= band.low_hz && hz <= band.high_hz) {
      taper = 1.0;
      if (hz < band.low_hz + edge_hz)
        taper = 0.5 - 0.5 * std::cos(M_PI * (hz - band.low_hz) / edge_hz);
      else if (hz > band.high_hz - edge_hz)
        taper = 0.5 - 0.5 * std::cos(M_PI * (band.high_hz - hz) / edge_hz);
    }
    const double phase = rng.uniform(0.0, 2.0 * M_PI);
    const double mag = std::max(taper, band.floor_amp);
    spec[k] = std::polar(mag, phase);
    spec[fft_n - k] = std::conj(spec[k]);
  }
  fft.inverse(spec.data());

  // Per-utterance gain only (3 dB spread, well under the 12 dB floor
  // spacing): every per-bin loudness comparison between two mixed speakers
  // is then constant over the whole utterance, so the loudest-source
  // labels form a stable frequency partition.
  const double gain = rng.uniform(0.7, 1.0);

  dsp::Waveform w;
  w.sample_rate = sample_rate;
  w.samples.resize(static_cast<size_t>(n));
  double peak = 1e-12;
  for (int64_t i = 0; i < n; ++i) {
    w.samples[i] = static_cast<float>(spec[i].real());
    peak = std::max(peak, std::fabs(static_cast<double>(w.samples[i])));
  }
  const float scale = static_cast<float>(0.30 * gain / peak);
  for (float &s : w.samples) s *= scale;
  return w;
}

ToyCorpus make_toy_corpus(const std::string &dir,
                          const std::vector<ToyBand> &bands,
                          const ToyCorpusOptions &options) {
  ToyCorpus out;
  out.root = (fs::path(dir) / "wav").string();
  out.metadata = (fs::path(dir) / "SPEAKERS.txt").string();
  fs::create_directories(out.root);

  std::ofstream meta(out.metadata);
  SCESEP_CHECK(meta.is_open(), "toy corpus: cannot create " << out.metadata);
  meta << "# synthetic band-noise speakers\n";

  uint64_t utt_seed = options.seed;
  for (const ToyBand &band : bands) {
    meta << band.id << "|" << band.gender << "\n";
    const fs::path spk_dir = fs::path(out.root) / band.id;
    fs::create_directories(spk_dir);
    for (int u = 0; u < options.utterances_per_speaker; ++u) {
      char name[32];
      std::snprintf(name, sizeof(name), "utt%03d.wav", u);
      dsp::Waveform w = toy_utterance(band, options.duration_s,
                                      options.sample_rate, ++utt_seed);
      dsp::write_wav((spk_dir / name).string(), w);
    }
  }
  return out;
}

}  // namespace testsupport
}  // namespace scesep
