// tests/test_corpus.cc

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

#include <complex>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "scesep/base/error.h"
#include "scesep/corpus/manifest.h"
#include "scesep/corpus/mix.h"
#include "scesep/corpus/registry.h"
#include "support/toy_corpus.h"

using namespace scesep;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_metadata(const fs::path &path, const std::string &text) {
  std::ofstream out(path);
  out << text;
}

dsp::Waveform silence(int rate, double duration_s) {
  dsp::Waveform w;
  w.sample_rate = rate;
  w.samples.assign(static_cast<size_t>(duration_s * rate), 0.0f);
  return w;
}

// The band-noise toy corpus, built once per process.
const testsupport::ToyCorpus &toy() {
  static testsupport::ToyCorpus corpus = [] {
    testsupport::ToyCorpusOptions opt;
    opt.utterances_per_speaker = 6;
    opt.duration_s = 1.5;
    return testsupport::make_toy_corpus(
        fresh_dir("scesep_corpus_toy").string(),
        testsupport::toy_inset_bands(), opt);
  }();
  return corpus;
}

dsp::PipelineConfig toy_pipeline() {
  dsp::PipelineConfig cfg;
  cfg.sample_rate = 10000;
  cfg.window = 256;
  cfg.hop = 128;
  return cfg;
}

dsp::Spectrogram mag_only(int64_t frames, int64_t bins,
                          const std::vector<float> &mags) {
  dsp::Spectrogram s;
  s.frames = frames;
  s.bins = bins;
  s.window = static_cast<int>((bins - 1) * 2);
  s.hop = s.window / 2;
  s.sample_rate = 10000;
  s.magnitude = mags;
  s.phase.assign(mags.size(), 0.0f);
  return s;
}

}  // namespace

TEST_CASE("build_registry basics") {
  const fs::path dir = fresh_dir("scesep_reg_basic");
  for (const std::string spk : {"alpha", "beta"}) {
    fs::create_directories(dir / "wav" / spk);
    for (int u = 0; u < 3; ++u)
      dsp::write_wav((dir / "wav" / spk / ("u" + std::to_string(u) + ".wav"))
                         .string(),
                     silence(10000, 0.2));
  }
  write_metadata(dir / "meta.txt", "# comment\nalpha|F\nbeta|M\nextra|F\n");

  const auto reg = corpus::SpeakerRegistry::build((dir / "wav").string(),
                                                  (dir / "meta.txt").string());
  CHECK(reg.count() == 2);
  CHECK(reg.by_index(0).id == "alpha");
  CHECK(reg.by_index(1).id == "beta");
  CHECK(reg.by_index(0).gender == 'F');
  CHECK(reg.index_of("beta") == 1);
  CHECK(reg.index_of("missing") == -1);
  CHECK(reg.by_index(0).utterances.size() == 3);
  CHECK(reg.by_index(0).utterances[0].samples == 2000);
  CHECK(reg.indices_of_gender('F') == std::vector<int>{0});
}

TEST_CASE("build_registry numeric id ordering") {
  const fs::path dir = fresh_dir("scesep_reg_numeric");
  for (const std::string spk : {"19", "26", "27", "103"}) {
    fs::create_directories(dir / "wav" / spk);
    dsp::write_wav((dir / "wav" / spk / "u0.wav").string(),
                   silence(10000, 0.1));
  }
  write_metadata(dir / "meta.txt", "19|F\n26|M\n27|M\n103|F\n");
  const auto reg = corpus::SpeakerRegistry::build((dir / "wav").string(),
                                                  (dir / "meta.txt").string());
  CHECK(reg.by_index(0).id == "19");
  CHECK(reg.by_index(1).id == "26");
  CHECK(reg.by_index(2).id == "27");
  CHECK(reg.by_index(3).id == "103");  // numeric, not lexicographic
}

TEST_CASE("build_registry error paths") {
  SUBCASE("discovered speaker without metadata names the id") {
    const fs::path dir = fresh_dir("scesep_reg_nometa");
    fs::create_directories(dir / "wav" / "ghost");
    dsp::write_wav((dir / "wav" / "ghost" / "u.wav").string(),
                   silence(10000, 0.1));
    write_metadata(dir / "meta.txt", "other|F\n");
    try {
      corpus::SpeakerRegistry::build((dir / "wav").string(),
                                     (dir / "meta.txt").string());
      FAIL("expected an error");
    } catch (const Error &e) {
      CHECK(std::string(e.what()).find("ghost") != std::string::npos);
    }
  }
  SUBCASE("unknown gender token") {
    const fs::path dir = fresh_dir("scesep_reg_badgender");
    fs::create_directories(dir / "wav" / "spk");
    dsp::write_wav((dir / "wav" / "spk" / "u.wav").string(),
                   silence(10000, 0.1));
    write_metadata(dir / "meta.txt", "spk|X\n");
    CHECK_THROWS_AS(corpus::SpeakerRegistry::build(
                        (dir / "wav").string(), (dir / "meta.txt").string()),
                    Error);
  }
  SUBCASE("speaker directory without audio") {
    const fs::path dir = fresh_dir("scesep_reg_noaudio");
    fs::create_directories(dir / "wav" / "spk");
    write_metadata(dir / "meta.txt", "spk|F\n");
    CHECK_THROWS_AS(corpus::SpeakerRegistry::build(
                        (dir / "wav").string(), (dir / "meta.txt").string()),
                    Error);
  }
}

TEST_CASE("split spec properties") {
  const auto reg = corpus::SpeakerRegistry::build(toy().root, toy().metadata);
  const auto splits = corpus::SplitSpec::make(reg, 0.8, 0.1);

  for (int s = 0; s < reg.count(); ++s) {
    const auto &train = splits.utterances(s, corpus::Split::kTrain);
    const auto &val = splits.utterances(s, corpus::Split::kValidate);
    const auto &test = splits.utterances(s, corpus::Split::kTest);
    CHECK(!train.empty());
    CHECK(!val.empty());
    CHECK(!test.empty());
    CHECK(train.size() + val.size() + test.size() ==
          reg.by_index(s).utterances.size());
    // disjoint
    for (int u : train) {
      CHECK(std::find(val.begin(), val.end(), u) == val.end());
      CHECK(std::find(test.begin(), test.end(), u) == test.end());
    }
  }
}

TEST_CASE("split requires three utterances per speaker") {
  const fs::path dir = fresh_dir("scesep_split_short");
  fs::create_directories(dir / "wav" / "solo");
  for (int u = 0; u < 2; ++u)
    dsp::write_wav((dir / "wav" / "solo" / ("u" + std::to_string(u) + ".wav"))
                       .string(),
                   silence(10000, 0.1));
  write_metadata(dir / "meta.txt", "solo|F\n");
  const auto reg = corpus::SpeakerRegistry::build((dir / "wav").string(),
                                                  (dir / "meta.txt").string());
  CHECK_THROWS_AS(corpus::SplitSpec::make(reg, 0.8, 0.1), Error);
}

TEST_CASE("compute_labels argmax and ties") {
  SUBCASE("loudest wins") {
    auto s1 = mag_only(1, 1, {3.0f});
    auto s2 = mag_only(1, 1, {1.0f});
    const auto y = corpus::compute_labels({s1, s2});
    CHECK(y == std::vector<float>{1.0f, -1.0f});
  }
  SUBCASE("exact tie goes to the lowest source position") {
    auto s1 = mag_only(1, 1, {2.0f});
    auto s2 = mag_only(1, 1, {2.0f});
    const auto y = corpus::compute_labels({s1, s2});
    CHECK(y == std::vector<float>{1.0f, -1.0f});
  }
  SUBCASE("three sources, middle loudest") {
    auto s1 = mag_only(1, 1, {1.0f});
    auto s2 = mag_only(1, 1, {5.0f});
    auto s3 = mag_only(1, 1, {2.0f});
    const auto y = corpus::compute_labels({s1, s2, s3});
    CHECK(y == std::vector<float>{-1.0f, 1.0f, -1.0f});
  }
}

TEST_CASE("make_mix with a silent source labels everything source 0") {
  const fs::path dir = fresh_dir("scesep_mix_silent");
  testsupport::ToyCorpusOptions opt;
  opt.utterances_per_speaker = 3;
  opt.duration_s = 1.0;
  const auto bands = testsupport::toy_inset_bands();
  testsupport::ToyCorpus tc =
      testsupport::make_toy_corpus((dir / "c").string(), {bands[0]}, opt);
  fs::create_directories(fs::path(tc.root) / "zz_silent");
  for (int u = 0; u < 3; ++u)
    dsp::write_wav((fs::path(tc.root) / "zz_silent" /
                    ("utt" + std::to_string(u) + ".wav"))
                       .string(),
                   silence(10000, 1.0));
  std::ofstream(tc.metadata, std::ios::app) << "zz_silent|M\n";

  const auto reg = corpus::SpeakerRegistry::build(tc.root, tc.metadata);
  corpus::MixSpec spec;
  spec.id = "silent";
  spec.sources = {{reg.index_of(bands[0].id), "utt000", 0},
                  {reg.index_of("zz_silent"), "utt0", 0}};
  const auto mix = corpus::make_mix(reg, spec, toy_pipeline(), 20);

  for (size_t i = 0; i < mix.labels.size(); i += 2) {
    CHECK(mix.labels[i] == 1.0f);
    CHECK(mix.labels[i + 1] == -1.0f);
  }
  for (size_t i = 0; i < mix.mixture.magnitude.size(); ++i)
    CHECK(mix.mixture.magnitude[i] ==
          doctest::Approx(mix.sources[0].magnitude[i]).epsilon(1e-6));
}

TEST_CASE("make_mix band-disjoint sources own their bands") {
  const auto reg = corpus::SpeakerRegistry::build(toy().root, toy().metadata);
  corpus::MixSpec spec;
  spec.id = "bands";
  spec.sources = {{reg.index_of("s01"), "utt000", 0},
                  {reg.index_of("s03"), "utt000", 0}};
  const dsp::PipelineConfig cfg = toy_pipeline();
  const auto mix = corpus::make_mix(reg, spec, cfg, 30);

  // s01 owns the low band, s03 the 2520-3730 band; deep inside each band
  // the band speaker must dominate almost every bin (isolated Rayleigh
  // fades may fall under the other speaker's broadband floor).
  const double bin_hz = static_cast<double>(cfg.sample_rate) / cfg.window;
  auto owned_fraction = [&](double lo_hz, double hi_hz, int source) {
    int64_t total = 0, owned = 0;
    for (int64_t t = 0; t < 30; ++t)
      for (int64_t f = static_cast<int64_t>(lo_hz / bin_hz) + 1;
           f < static_cast<int64_t>(hi_hz / bin_hz); ++f) {
        ++total;
        if (mix.labels[(t * mix.mixture.bins + f) * 2 + source] == 1.0f)
          ++owned;
      }
    return static_cast<double>(owned) / total;
  };
  CHECK(owned_fraction(300, 1000, 0) > 0.97);
  CHECK(owned_fraction(2800, 3500, 1) > 0.97);
}

TEST_CASE("make_mix complex sum equals analysis of the summed waveform") {
  const auto reg = corpus::SpeakerRegistry::build(toy().root, toy().metadata);
  const dsp::PipelineConfig cfg = toy_pipeline();

  const auto &u1 = reg.by_index(reg.index_of("s01")).utterances[0];
  const auto &u2 = reg.by_index(reg.index_of("s02")).utterances[0];
  dsp::Waveform w1 = dsp::read_wav(u1.path);
  dsp::Waveform w2 = dsp::read_wav(u2.path);
  dsp::Waveform sum;
  sum.sample_rate = w1.sample_rate;
  const int64_t n = std::min(w1.size(), w2.size());
  sum.samples.resize(n);
  for (int64_t i = 0; i < n; ++i)
    sum.samples[i] = w1.samples[i] + w2.samples[i];

  corpus::MixSpec spec;
  spec.id = "lin";
  spec.sources = {{reg.index_of("s01"), u1.name, 0},
                  {reg.index_of("s02"), u2.name, 0}};
  const auto mix = corpus::make_mix(reg, spec, cfg, 0);
  const dsp::Spectrogram direct = dsp::analyze(sum, cfg);

  double err = 0.0, ref = 0.0;
  for (int64_t t = 0; t < mix.mixture.frames; ++t)
    for (int64_t f = 0; f < mix.mixture.bins; ++f) {
      const std::complex<double> za =
          std::polar<double>(mix.mixture.mag(t, f), mix.mixture.phi(t, f));
      const std::complex<double> zb =
          std::polar<double>(direct.mag(t, f), direct.phi(t, f));
      err += std::norm(za - zb);
      ref += std::norm(zb);
    }
  CHECK(std::sqrt(err / ref) < 1e-5);
}

TEST_CASE("make_mix rejects too-short utterances") {
  const auto reg = corpus::SpeakerRegistry::build(toy().root, toy().metadata);
  corpus::MixSpec spec;
  spec.id = "short";
  spec.sources = {{reg.index_of("s01"), "utt000", 0},
                  {reg.index_of("s02"), "utt000", 100}};
  CHECK_THROWS_AS(corpus::make_mix(reg, spec, toy_pipeline(), 40), Error);
}

TEST_CASE("sample_batch determinism, gender constraints, one-hot") {
  const auto reg = corpus::SpeakerRegistry::build(toy().root, toy().metadata);
  const auto splits = corpus::SplitSpec::make(reg, 0.6, 0.2);
  const dsp::PipelineConfig cfg = toy_pipeline();

  SUBCASE("same seed gives an identical batch") {
    Rng a(123), b(123);
    const auto ba = corpus::sample_batch(reg, splits, corpus::Split::kTrain,
                                         corpus::MixType::kRandom, 3, 20, cfg,
                                         a);
    const auto bb = corpus::sample_batch(reg, splits, corpus::Split::kTrain,
                                         corpus::MixType::kRandom, 3, 20, cfg,
                                         b);
    CHECK(ba.features == bb.features);
    CHECK(ba.labels == bb.labels);
    CHECK(ba.speaker_indices == bb.speaker_indices);
  }

  SUBCASE("ff draws only female speakers, fm draws one of each") {
    Rng rng(5);
    const auto ff = corpus::sample_batch(reg, splits, corpus::Split::kTrain,
                                         corpus::MixType::kFF, 4, 20, cfg,
                                         rng);
    for (int64_t idx : ff.speaker_indices)
      CHECK(reg.by_index(static_cast<int>(idx)).gender == 'F');

    const auto fm = corpus::sample_batch(reg, splits, corpus::Split::kTrain,
                                         corpus::MixType::kFM, 4, 20, cfg,
                                         rng);
    for (int64_t b = 0; b < fm.batch; ++b) {
      const char g0 =
          reg.by_index(static_cast<int>(fm.speaker_indices[b * 2])).gender;
      const char g1 =
          reg.by_index(static_cast<int>(fm.speaker_indices[b * 2 + 1])).gender;
      CHECK(g0 != g1);
    }
  }

  SUBCASE("exactly one +1 per bin, distinct speakers per mix") {
    Rng rng(6);
    const auto batch = corpus::sample_batch(reg, splits, corpus::Split::kTrain,
                                            corpus::MixType::kRandom3, 2, 20,
                                            cfg, rng);
    CHECK(batch.sources == 3);
    for (int64_t b = 0; b < batch.batch; ++b) {
      CHECK(batch.speaker_indices[b * 3] != batch.speaker_indices[b * 3 + 1]);
      CHECK(batch.speaker_indices[b * 3] != batch.speaker_indices[b * 3 + 2]);
    }
    for (size_t i = 0; i < batch.labels.size(); i += 3) {
      int ones = 0;
      for (int m = 0; m < 3; ++m)
        if (batch.labels[i + m] == 1.0f) ++ones;
      CHECK(ones == 1);
    }
    // features are a normalized block per mix
    for (int64_t b = 0; b < batch.batch; ++b) {
      float hi = 0.0f;
      for (int64_t i = 0; i < batch.frames * batch.bins; ++i)
        hi = std::max(hi, batch.features[b * batch.frames * batch.bins + i]);
      CHECK(hi == 1.0f);
    }
  }

  SUBCASE("infeasible gender constraint errors") {
    const fs::path dir = fresh_dir("scesep_mix_infeasible");
    testsupport::ToyCorpusOptions opt;
    opt.utterances_per_speaker = 4;
    opt.duration_s = 1.0;
    const auto bands = testsupport::toy_inset_bands();
    testsupport::ToyCorpus tc = testsupport::make_toy_corpus(
        (dir / "c").string(), {bands[0], bands[2]}, opt);  // one F, one M
    const auto reg2 = corpus::SpeakerRegistry::build(tc.root, tc.metadata);
    const auto splits2 = corpus::SplitSpec::make(reg2, 0.5, 0.25);
    Rng rng(7);
    CHECK_THROWS_AS(
        corpus::sample_batch(reg2, splits2, corpus::Split::kTrain,
                             corpus::MixType::kFF, 1, 20, toy_pipeline(), rng),
        Error);
  }
}

TEST_CASE("manifest round trip and parse errors") {
  const auto reg = corpus::SpeakerRegistry::build(toy().root, toy().metadata);
  const fs::path dir = fresh_dir("scesep_manifest");

  corpus::MixSpec a;
  a.id = "m1";
  a.sources = {{reg.index_of("s01"), "utt000", 5},
               {reg.index_of("s03"), "utt001", 9}};
  corpus::MixSpec b;
  b.id = "m2";
  b.sources = {{reg.index_of("s02"), "utt002", 0},
               {reg.index_of("s04"), "utt003", 2},
               {reg.index_of("s01"), "utt004", 1}};
  const std::string path = (dir / "manifest.txt").string();
  corpus::write_manifest(path, {a, b}, reg);

  const auto mixes = corpus::read_manifest(path, reg);
  REQUIRE(mixes.size() == 2);
  CHECK(mixes[0].id == "m1");
  CHECK(mixes[0].sources[0].speaker_index == reg.index_of("s01"));
  CHECK(mixes[0].sources[1].offset_frames == 9);
  CHECK(mixes[1].sources.size() == 3);

  SUBCASE("unknown speaker errors with the line number") {
    std::ofstream bad((dir / "bad.txt").string());
    bad << "# header\n";
    bad << "m1,nosuch:utt000:0,s01:utt000:0\n";
    bad.close();
    try {
      corpus::read_manifest((dir / "bad.txt").string(), reg);
      FAIL("expected an error");
    } catch (const Error &e) {
      const std::string msg = e.what();
      CHECK(msg.find("line 2") != std::string::npos);
      CHECK(msg.find("nosuch") != std::string::npos);
    }
  }
  SUBCASE("malformed source field") {
    std::ofstream bad((dir / "bad2.txt").string());
    bad << "m1,s01:utt000,s02:utt000:0\n";
    bad.close();
    CHECK_THROWS_AS(corpus::read_manifest((dir / "bad2.txt").string(), reg),
                    Error);
  }
}
