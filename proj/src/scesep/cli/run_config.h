// scesep/cli/run_config.h

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

#ifndef SCESEP_CLI_RUN_CONFIG_H_
#define SCESEP_CLI_RUN_CONFIG_H_

#include <string>
#include <vector>

#include "scesep/dsp/pipeline.h"
#include "scesep/nn/adam.h"
#include "scesep/sce/model.h"
#include "scesep/sce/trainer.h"

namespace scesep {
namespace cli {

// Sectioned key-value text ("[section]" lines, "key = value" lines,
// '#' comments).
struct IniItem {
  std::string section, key, value;
  int line = 0;
};

std::vector<IniItem> parse_ini_text(const std::string &text);

// All knobs of a run.  File form is sectioned key-value text; command-line
// flags override file values.  Defaults are the published recipe where it
// pins a value; everything else is marked "# paper-unstated" when the
// default config is emitted.
struct RunConfig {
  // dsp
  int64_t sample_rate = 10000;
  int64_t window = 512;
  int64_t hop = 256;
  double preemphasis = 0.95;
  // model
  int64_t frames = 40;
  int64_t embed_dim = 40;
  int64_t hidden = 600;
  int64_t layers = 2;
  // train
  int64_t batch = 256;
  int64_t steps = 20000;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double clip_norm = 5.0;
  int64_t val_every = 100;
  int64_t val_batches = 4;
  int64_t checkpoint_every = 500;
  int64_t patience = 10;
  std::string mix_type = "random";
  int64_t seed = 1;
  bool loss_per_bin_mean = false;
  bool debug_nan_checks = false;
  bool prefetch = true;
  // corpus
  std::string corpus_root;
  std::string corpus_metadata;
  double train_frac = 0.8;
  double validate_frac = 0.1;
  // mix
  std::string mix_split = "test";
  bool mix_write_wavs = false;

  int64_t bins() const { return window / 2 + 1; }

  dsp::PipelineConfig pipeline() const;
  sce::ModelConfig model_config(int64_t speakers) const;
  nn::AdamConfig adam_config() const;
  sce::TrainOptions train_options() const;

  // Serialized file form; annotate adds the "# paper-unstated" markers.
  std::string serialize(bool annotate) const;
  // Flat "section.key" items (for embedding in checkpoint headers).
  std::vector<std::pair<std::string, std::string>> flat_items() const;

  void apply(const IniItem &item);
  void apply_flat(const std::string &flat_key, const std::string &value);
  static RunConfig parse_file(const std::string &path);
  static RunConfig parse_text(const std::string &text);
};

}  // namespace cli
}  // namespace scesep

#endif  // SCESEP_CLI_RUN_CONFIG_H_
