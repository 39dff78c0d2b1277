// scesep/corpus/mix.cc

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

#include "scesep/corpus/mix.h"

#include <algorithm>
#include <cmath>

#include "scesep/base/error.h"

namespace scesep {
namespace corpus {

const char *split_name(Split s) {
  switch (s) {
    case Split::kTrain:
      return "train";
    case Split::kValidate:
      return "validate";
    case Split::kTest:
      return "test";
  }
  return "?";
}

SplitSpec SplitSpec::make(const SpeakerRegistry &reg, double train_frac,
                          double validate_frac) {
  SCESEP_CHECK(train_frac > 0.0 && validate_frac > 0.0 &&
                   train_frac + validate_frac < 1.0,
               "split: bad fractions " << train_frac << "/" << validate_frac);
  SplitSpec spec;
  spec.table_.resize(reg.count());
  for (int s = 0; s < reg.count(); ++s) {
    const int n = static_cast<int>(reg.by_index(s).utterances.size());
    SCESEP_CHECK(n >= 3, "split: speaker " << reg.by_index(s).id << " has only "
                                           << n
                                           << " utterances; at least 3 are "
                                              "needed so every split is "
                                              "non-empty");
    const double test_frac = 1.0 - train_frac - validate_frac;
    int n_val = std::max(1, static_cast<int>(std::floor(validate_frac * n)));
    int n_test = std::max(1, static_cast<int>(std::floor(test_frac * n)));
    const int n_train = n - n_val - n_test;
    SCESEP_CHECK(n_train >= 1, "split: fractions leave no training data for "
                                   << reg.by_index(s).id);
    auto &rows = spec.table_[s];
    rows.resize(3);
    for (int i = 0; i < n_train; ++i) rows[0].push_back(i);
    for (int i = n_train; i < n_train + n_val; ++i) rows[1].push_back(i);
    for (int i = n_train + n_val; i < n; ++i) rows[2].push_back(i);
  }
  return spec;
}

const std::vector<int> &SplitSpec::utterances(int speaker_index,
                                              Split s) const {
  SCESEP_CHECK(speaker_index >= 0 &&
                   speaker_index < static_cast<int>(table_.size()),
               "split: speaker index " << speaker_index << " out of range");
  return table_[speaker_index][static_cast<int>(s)];
}

MixType mix_type_from_name(const std::string &name) {
  if (name == "ff") return MixType::kFF;
  if (name == "mm") return MixType::kMM;
  if (name == "fm") return MixType::kFM;
  if (name == "random") return MixType::kRandom;
  if (name == "random3") return MixType::kRandom3;
  SCESEP_FAIL("unknown mix type '" << name
                                   << "' (expected ff, mm, fm, random, "
                                      "random3)");
}

const char *mix_type_name(MixType t) {
  switch (t) {
    case MixType::kFF:
      return "ff";
    case MixType::kMM:
      return "mm";
    case MixType::kFM:
      return "fm";
    case MixType::kRandom:
      return "random";
    case MixType::kRandom3:
      return "random3";
  }
  return "?";
}

int mix_type_sources(MixType t) { return t == MixType::kRandom3 ? 3 : 2; }

std::vector<float> compute_labels(
    const std::vector<dsp::Spectrogram> &sources) {
  SCESEP_CHECK(!sources.empty(), "compute_labels: no sources");
  const int64_t frames = sources[0].frames, bins = sources[0].bins;
  const int64_t m = static_cast<int64_t>(sources.size());
  for (const auto &s : sources)
    SCESEP_CHECK(s.frames == frames && s.bins == bins,
                 "compute_labels: source spectrogram shapes differ");

  std::vector<float> y(static_cast<size_t>(frames * bins * m), -1.0f);
  for (int64_t t = 0; t < frames; ++t)
    for (int64_t f = 0; f < bins; ++f) {
      int64_t best = 0;
      float best_v = sources[0].mag(t, f);
      for (int64_t c = 1; c < m; ++c) {
        const float v = sources[c].mag(t, f);
        if (v > best_v) {  // strict: ties keep the lowest source position
          best_v = v;
          best = c;
        }
      }
      y[(t * bins + f) * m + best] = 1.0f;
    }
  return y;
}

namespace {

const Utterance &find_utterance(const Speaker &spk, const std::string &name) {
  for (const Utterance &u : spk.utterances)
    if (u.name == name) return u;
  SCESEP_FAIL("mix: speaker " << spk.id << " has no utterance '" << name
                              << "'");
}

}  // namespace

MixResult make_mix(const SpeakerRegistry &reg, const MixSpec &spec,
                   const dsp::PipelineConfig &cfg, int64_t frames) {
  SCESEP_CHECK(spec.sources.size() >= 2 && spec.sources.size() <= 3,
               "mix: need 2 or 3 sources, got " << spec.sources.size());
  for (size_t i = 0; i < spec.sources.size(); ++i)
    for (size_t j = i + 1; j < spec.sources.size(); ++j)
      SCESEP_CHECK(spec.sources[i].speaker_index !=
                       spec.sources[j].speaker_index,
                   "mix: duplicate speaker index "
                       << spec.sources[i].speaker_index);

  MixResult out;
  for (const MixSourceSpec &src : spec.sources) {
    const Speaker &spk = reg.by_index(src.speaker_index);
    const Utterance &utt = find_utterance(spk, src.utterance);
    dsp::Spectrogram s = dsp::analyze(dsp::read_wav(utt.path), cfg);
    SCESEP_CHECK(src.offset_frames >= 0 && src.offset_frames < s.frames,
                 "mix: offset " << src.offset_frames << " out of range for "
                                << utt.path << " (" << s.frames << " frames)");
    out.sources.push_back(std::move(s));
  }

  // Common frame count across all sources at their offsets.
  int64_t common = out.sources[0].frames - spec.sources[0].offset_frames;
  for (size_t i = 1; i < out.sources.size(); ++i)
    common = std::min(common,
                      out.sources[i].frames - spec.sources[i].offset_frames);
  const int64_t want = (frames > 0) ? frames : common;
  for (size_t i = 0; i < out.sources.size(); ++i)
    SCESEP_CHECK(out.sources[i].frames - spec.sources[i].offset_frames >= want,
                 "mix: utterance '" << spec.sources[i].utterance
                                    << "' too short: needs " << want
                                    << " frames at offset "
                                    << spec.sources[i].offset_frames
                                    << ", has " << out.sources[i].frames);

  for (size_t i = 0; i < out.sources.size(); ++i)
    out.sources[i] =
        dsp::crop_frames(out.sources[i], spec.sources[i].offset_frames, want);

  out.mixture = out.sources[0];
  for (size_t i = 1; i < out.sources.size(); ++i)
    out.mixture = dsp::complex_add(out.mixture, out.sources[i]);
  out.labels = compute_labels(out.sources);
  return out;
}

namespace {

// Utterances of one split with at least `frames` frames after analysis.
std::vector<int> usable_utterances(const Speaker &spk,
                                   const std::vector<int> &candidates,
                                   int64_t frames,
                                   const dsp::PipelineConfig &cfg) {
  std::vector<int> out;
  for (int idx : candidates) {
    const Utterance &u = spk.utterances[idx];
    if (cfg.frames_for(u.samples, u.sample_rate) >= frames) out.push_back(idx);
  }
  return out;
}

std::vector<char> gender_pattern(MixType type, Rng &rng) {
  switch (type) {
    case MixType::kFF:
      return {'F', 'F'};
    case MixType::kMM:
      return {'M', 'M'};
    case MixType::kFM:
      // Mixed pair; slot order is randomized so labels are unbiased.
      return rng.below(2) == 0 ? std::vector<char>{'F', 'M'}
                               : std::vector<char>{'M', 'F'};
    case MixType::kRandom:
      return {'?', '?'};
    case MixType::kRandom3:
      return {'?', '?', '?'};
  }
  return {};
}

}  // namespace

MixSpec sample_mix_spec(const SpeakerRegistry &reg, const SplitSpec &split_spec,
                        Split split, MixType type, int64_t frames,
                        const dsp::PipelineConfig &cfg, Rng &rng) {
  const std::vector<char> pattern = gender_pattern(type, rng);

  // Speakers usable in a slot: gender matches and the split holds at least
  // one long-enough utterance.
  auto eligible = [&](char g) {
    std::vector<int> out;
    for (int i = 0; i < reg.count(); ++i) {
      if (g != '?' && reg.by_index(i).gender != g) continue;
      if (!usable_utterances(reg.by_index(i),
                             split_spec.utterances(i, split), frames, cfg)
               .empty())
        out.push_back(i);
    }
    return out;
  };

  MixSpec spec;
  std::vector<int> taken;
  for (char g : pattern) {
    std::vector<int> pool = eligible(g);
    pool.erase(std::remove_if(pool.begin(), pool.end(),
                              [&](int i) {
                                return std::find(taken.begin(), taken.end(),
                                                 i) != taken.end();
                              }),
               pool.end());
    SCESEP_CHECK(!pool.empty(),
                 "sample_batch: mix type '"
                     << mix_type_name(type)
                     << "' infeasible: no remaining eligible speaker for "
                        "gender slot '"
                     << g << "' in split " << split_name(split));
    const int spk_idx = pool[rng.below(pool.size())];
    taken.push_back(spk_idx);

    const Speaker &spk = reg.by_index(spk_idx);
    const std::vector<int> utts = usable_utterances(
        spk, split_spec.utterances(spk_idx, split), frames, cfg);
    const int utt_idx = utts[rng.below(utts.size())];
    const Utterance &utt = spk.utterances[utt_idx];
    const int64_t total = cfg.frames_for(utt.samples, utt.sample_rate);

    MixSourceSpec src;
    src.speaker_index = spk_idx;
    src.utterance = utt.name;
    src.offset_frames =
        static_cast<int64_t>(rng.below(static_cast<uint64_t>(total - frames + 1)));
    spec.sources.push_back(std::move(src));
  }
  return spec;
}

Batch sample_batch(const SpeakerRegistry &reg, const SplitSpec &split_spec,
                   Split split, MixType type, int64_t batch, int64_t frames,
                   const dsp::PipelineConfig &cfg, Rng &rng) {
  SCESEP_CHECK(batch > 0 && frames > 0,
               "sample_batch: batch and frames must be positive");
  const int64_t m = mix_type_sources(type);
  const int64_t bins = cfg.bins();

  Batch out;
  out.batch = batch;
  out.frames = frames;
  out.bins = bins;
  out.sources = m;
  out.features.resize(static_cast<size_t>(batch * frames * bins));
  out.labels.resize(static_cast<size_t>(batch * frames * bins * m));
  out.speaker_indices.resize(static_cast<size_t>(batch * m));
  out.source_magnitude.resize(static_cast<size_t>(batch * frames * bins * m));

  for (int64_t b = 0; b < batch; ++b) {
    const MixSpec spec =
        sample_mix_spec(reg, split_spec, split, type, frames, cfg, rng);
    const MixResult mix = make_mix(reg, spec, cfg, frames);
    const dsp::NormalizedFeature feat = dsp::normalize_input(mix.mixture);

    std::copy(feat.values.begin(), feat.values.end(),
              out.features.begin() + b * frames * bins);
    std::copy(mix.labels.begin(), mix.labels.end(),
              out.labels.begin() + b * frames * bins * m);
    for (int64_t i = 0; i < m; ++i) {
      out.speaker_indices[b * m + i] = spec.sources[i].speaker_index;
      const auto &mag = mix.sources[i].magnitude;
      for (int64_t tf = 0; tf < frames * bins; ++tf)
        out.source_magnitude[(b * frames * bins + tf) * m + i] = mag[tf];
    }
  }
  return out;
}

}  // namespace corpus
}  // namespace scesep
