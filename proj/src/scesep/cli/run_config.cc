// scesep/cli/run_config.cc

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

#include "scesep/cli/run_config.h"

#include <cctype>
#include <fstream>
#include <sstream>
#include <variant>

#include "scesep/base/error.h"

namespace scesep {
namespace cli {

namespace {

std::string trim(const std::string &s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

using Member = std::variant<int64_t RunConfig::*, double RunConfig::*,
                            bool RunConfig::*, std::string RunConfig::*>;

struct Entry {
  const char *section;
  const char *key;
  Member member;
  bool pinned;  // value fixed by the published recipe (no marker)
};

const std::vector<Entry> &entries() {
  static const std::vector<Entry> table = {
      {"dsp", "sample_rate", &RunConfig::sample_rate, true},
      {"dsp", "window", &RunConfig::window, true},
      {"dsp", "hop", &RunConfig::hop, true},
      {"dsp", "preemphasis", &RunConfig::preemphasis, true},
      {"model", "frames", &RunConfig::frames, true},
      {"model", "embed_dim", &RunConfig::embed_dim, false},
      {"model", "hidden", &RunConfig::hidden, true},
      {"model", "layers", &RunConfig::layers, true},
      {"train", "batch", &RunConfig::batch, true},
      {"train", "steps", &RunConfig::steps, false},
      {"train", "lr", &RunConfig::lr, false},
      {"train", "beta1", &RunConfig::beta1, false},
      {"train", "beta2", &RunConfig::beta2, false},
      {"train", "epsilon", &RunConfig::epsilon, false},
      {"train", "clip_norm", &RunConfig::clip_norm, false},
      {"train", "val_every", &RunConfig::val_every, false},
      {"train", "val_batches", &RunConfig::val_batches, false},
      {"train", "checkpoint_every", &RunConfig::checkpoint_every, false},
      {"train", "patience", &RunConfig::patience, false},
      {"train", "mix_type", &RunConfig::mix_type, false},
      {"train", "seed", &RunConfig::seed, false},
      {"train", "loss_per_bin_mean", &RunConfig::loss_per_bin_mean, false},
      {"train", "debug_nan_checks", &RunConfig::debug_nan_checks, false},
      {"train", "prefetch", &RunConfig::prefetch, false},
      {"corpus", "root", &RunConfig::corpus_root, true},
      {"corpus", "metadata", &RunConfig::corpus_metadata, true},
      {"corpus", "train_frac", &RunConfig::train_frac, true},
      {"corpus", "validate_frac", &RunConfig::validate_frac, true},
      {"mix", "split", &RunConfig::mix_split, false},
      {"mix", "write_wavs", &RunConfig::mix_write_wavs, false},
  };
  return table;
}

std::string value_str(const RunConfig &cfg, const Entry &e) {
  std::ostringstream os;
  std::visit(
      [&](auto member) {
        using T = std::remove_reference_t<decltype(cfg.*member)>;
        if constexpr (std::is_same_v<T, bool>)
          os << ((cfg.*member) ? "true" : "false");
        else if constexpr (std::is_same_v<T, double>) {
          os.precision(17);
          os << cfg.*member;
        } else
          os << cfg.*member;
      },
      e.member);
  return os.str();
}

void assign(RunConfig &cfg, const Entry &e, const std::string &raw) {
  const std::string v = trim(raw);
  std::visit(
      [&](auto member) {
        using T = std::remove_reference_t<decltype(cfg.*member)>;
        try {
          if constexpr (std::is_same_v<T, int64_t>) {
            cfg.*member = std::stoll(v);
          } else if constexpr (std::is_same_v<T, double>) {
            cfg.*member = std::stod(v);
          } else if constexpr (std::is_same_v<T, bool>) {
            if (v == "true" || v == "1")
              cfg.*member = true;
            else if (v == "false" || v == "0")
              cfg.*member = false;
            else
              throw std::invalid_argument("bool");
          } else {
            cfg.*member = v;
          }
        } catch (const std::exception &) {
          SCESEP_FAIL("config: bad value '" << v << "' for " << e.section
                                            << "." << e.key);
        }
      },
      e.member);
}

const Entry &find_entry(const std::string &section, const std::string &key) {
  for (const Entry &e : entries())
    if (section == e.section && key == e.key) return e;
  SCESEP_FAIL("config: unknown key '" << section << "." << key << "'");
}

}  // namespace

std::vector<IniItem> parse_ini_text(const std::string &text) {
  std::vector<IniItem> items;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      SCESEP_CHECK(t.back() == ']', "config: bad section header at line "
                                        << line_no << ": " << t);
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const size_t eq = t.find('=');
    SCESEP_CHECK(eq != std::string::npos,
                 "config: expected key = value at line " << line_no << ": "
                                                         << t);
    IniItem item;
    item.section = section;
    item.key = trim(t.substr(0, eq));
    item.value = trim(t.substr(eq + 1));
    item.line = line_no;
    items.push_back(std::move(item));
  }
  return items;
}

dsp::PipelineConfig RunConfig::pipeline() const {
  dsp::PipelineConfig cfg;
  cfg.sample_rate = static_cast<int>(sample_rate);
  cfg.window = static_cast<int>(window);
  cfg.hop = static_cast<int>(hop);
  cfg.preemphasis = static_cast<float>(preemphasis);
  return cfg;
}

sce::ModelConfig RunConfig::model_config(int64_t speakers) const {
  sce::ModelConfig cfg;
  cfg.frames = frames;
  cfg.bins = bins();
  cfg.embed_dim = embed_dim;
  cfg.hidden = hidden;
  cfg.layers = layers;
  cfg.batch = batch;
  cfg.speakers = speakers;
  cfg.per_bin_mean = loss_per_bin_mean;
  return cfg;
}

nn::AdamConfig RunConfig::adam_config() const {
  nn::AdamConfig cfg;
  cfg.lr = static_cast<float>(lr);
  cfg.beta1 = static_cast<float>(beta1);
  cfg.beta2 = static_cast<float>(beta2);
  cfg.epsilon = static_cast<float>(epsilon);
  return cfg;
}

sce::TrainOptions RunConfig::train_options() const {
  sce::TrainOptions opt;
  opt.steps = steps;
  opt.val_every = val_every;
  opt.val_batches = val_batches;
  opt.patience = static_cast<int>(patience);
  opt.clip_norm = static_cast<float>(clip_norm);
  opt.seed = static_cast<uint64_t>(seed);
  opt.mix_type = corpus::mix_type_from_name(mix_type);
  opt.prefetch = prefetch;
  return opt;
}

std::string RunConfig::serialize(bool annotate) const {
  std::ostringstream os;
  std::string section;
  for (const Entry &e : entries()) {
    if (e.section != section) {
      if (!section.empty()) os << "\n";
      section = e.section;
      os << "[" << section << "]\n";
    }
    os << e.key << " = " << value_str(*this, e);
    if (annotate && !e.pinned) os << "  # paper-unstated";
    os << "\n";
  }
  return os.str();
}

std::vector<std::pair<std::string, std::string>> RunConfig::flat_items()
    const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Entry &e : entries())
    out.emplace_back(std::string(e.section) + "." + e.key,
                     value_str(*this, e));
  return out;
}

void RunConfig::apply(const IniItem &item) {
  assign(*this, find_entry(item.section, item.key), item.value);
}

void RunConfig::apply_flat(const std::string &flat_key,
                           const std::string &value) {
  const size_t dot = flat_key.find('.');
  SCESEP_CHECK(dot != std::string::npos,
               "config: bad flat key '" << flat_key << "'");
  assign(*this,
         find_entry(flat_key.substr(0, dot), flat_key.substr(dot + 1)),
         value);
}

RunConfig RunConfig::parse_text(const std::string &text) {
  RunConfig cfg;
  for (const IniItem &item : parse_ini_text(text)) cfg.apply(item);
  return cfg;
}

RunConfig RunConfig::parse_file(const std::string &path) {
  std::ifstream in(path);
  SCESEP_CHECK(in.is_open(), "config: cannot open " << path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

}  // namespace cli
}  // namespace scesep
