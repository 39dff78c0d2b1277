// scesep/cli/commands.cc

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

#include "scesep/cli/commands.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "scesep/base/error.h"
#include "scesep/cli/checkpoint.h"
#include "scesep/cli/run_config.h"
#include "scesep/corpus/manifest.h"
#include "scesep/eval/bench.h"
#include "scesep/eval/evaluate.h"
#include "scesep/separate/separate.h"

namespace scesep {
namespace cli {

namespace fs = std::filesystem;

namespace {

struct CommonFlags {
  std::string config_path;
  std::string corpus_dir;
  std::string metadata_path;
  std::optional<uint64_t> seed;
};

RunConfig load_config(const CommonFlags &flags) {
  RunConfig cfg = flags.config_path.empty()
                      ? RunConfig()
                      : RunConfig::parse_file(flags.config_path);
  if (!flags.corpus_dir.empty()) cfg.corpus_root = flags.corpus_dir;
  if (!flags.metadata_path.empty()) cfg.corpus_metadata = flags.metadata_path;
  if (flags.seed) cfg.seed = static_cast<int64_t>(*flags.seed);
  return cfg;
}

corpus::SpeakerRegistry build_registry(const RunConfig &cfg) {
  SCESEP_CHECK(!cfg.corpus_root.empty(),
               "no corpus directory given (--corpus or [corpus] root)");
  SCESEP_CHECK(!cfg.corpus_metadata.empty(),
               "no metadata file given (--metadata or [corpus] metadata)");
  return corpus::SpeakerRegistry::build(cfg.corpus_root, cfg.corpus_metadata);
}

corpus::Split split_from_name(const std::string &name) {
  if (name == "train") return corpus::Split::kTrain;
  if (name == "validate") return corpus::Split::kValidate;
  if (name == "test") return corpus::Split::kTest;
  SCESEP_FAIL("unknown split '" << name
                                << "' (expected train, validate, test)");
}

int cmd_config() {
  std::cout << RunConfig().serialize(/*annotate=*/true);
  return 0;
}

int cmd_mix(const CommonFlags &flags, const std::string &type_name,
            int64_t count, const std::string &out_dir) {
  RunConfig cfg = load_config(flags);
  const corpus::MixType type = corpus::mix_type_from_name(type_name);
  const corpus::SpeakerRegistry reg = build_registry(cfg);
  const corpus::SplitSpec splits =
      corpus::SplitSpec::make(reg, cfg.train_frac, cfg.validate_frac);
  const corpus::Split split = split_from_name(cfg.mix_split);
  const dsp::PipelineConfig pipe = cfg.pipeline();

  fs::create_directories(out_dir);
  Rng rng(static_cast<uint64_t>(cfg.seed));
  std::vector<corpus::MixSpec> mixes;
  for (int64_t i = 0; i < count; ++i) {
    corpus::MixSpec spec = corpus::sample_mix_spec(reg, splits, split, type,
                                                   cfg.frames, pipe, rng);
    char id[32];
    std::snprintf(id, sizeof(id), "mix%05lld", static_cast<long long>(i));
    spec.id = id;
    mixes.push_back(std::move(spec));
  }
  const std::string manifest_path =
      (fs::path(out_dir) / "manifest.txt").string();
  corpus::write_manifest(manifest_path, mixes, reg);
  std::cout << "wrote " << mixes.size() << " mixes to " << manifest_path
            << "\n";

  if (cfg.mix_write_wavs) {
    for (const corpus::MixSpec &spec : mixes) {
      const corpus::MixResult mix = corpus::make_mix(reg, spec, pipe, 0);
      dsp::write_wav((fs::path(out_dir) / (spec.id + ".wav")).string(),
                     dsp::synthesize(mix.mixture, pipe));
    }
    std::cout << "wrote " << mixes.size() << " mixture wavs to " << out_dir
              << "\n";
  }
  return 0;
}

int cmd_train(const CommonFlags &flags, std::optional<int64_t> steps_override,
              const std::string &resume_path, const std::string &out_dir) {
  RunConfig cfg;
  std::optional<Checkpoint> resume;
  if (!resume_path.empty()) {
    resume = load_checkpoint(resume_path);
    cfg = resume->config;
    if (!flags.corpus_dir.empty()) cfg.corpus_root = flags.corpus_dir;
    if (!flags.metadata_path.empty())
      cfg.corpus_metadata = flags.metadata_path;
    if (flags.seed) cfg.seed = static_cast<int64_t>(*flags.seed);
  } else {
    cfg = load_config(flags);
  }
  if (steps_override) cfg.steps = *steps_override;

  const corpus::SpeakerRegistry reg = build_registry(cfg);
  const corpus::SplitSpec splits =
      corpus::SplitSpec::make(reg, cfg.train_frac, cfg.validate_frac);
  ag::set_debug_checks(cfg.debug_nan_checks);

  sce::SceModel model = resume
                            ? model_from_checkpoint(*resume)
                            : sce::SceModel::init(
                                  cfg.model_config(reg.count()),
                                  static_cast<uint64_t>(cfg.seed));
  if (resume) {
    SCESEP_CHECK(static_cast<int>(resume->speaker_ids.size()) == reg.count(),
                 "train: checkpoint has " << resume->speaker_ids.size()
                                          << " speakers, corpus has "
                                          << reg.count());
    for (int i = 0; i < reg.count(); ++i)
      SCESEP_CHECK(resume->speaker_ids[i] == reg.by_index(i).id,
                   "train: speaker mismatch at index "
                       << i << ": checkpoint '" << resume->speaker_ids[i]
                       << "' vs corpus '" << reg.by_index(i).id << "'");
  }

  nn::Adam adam(model.parameters(), cfg.adam_config());
  int64_t start_step = 0;
  if (resume) {
    SCESEP_CHECK(restore_adam(*resume, model, &adam),
                 "train: checkpoint " << resume_path
                                      << " has no optimizer state; cannot "
                                         "resume");
    start_step = resume->step;
  }

  fs::create_directories(out_dir);
  const std::string log_path = (fs::path(out_dir) / "train.log").string();
  std::ofstream log(log_path, resume ? std::ios::app : std::ios::trunc);
  SCESEP_CHECK(log.is_open(), "train: cannot open log " << log_path);

  sce::Trainer trainer(model, adam, reg, splits, cfg.pipeline(),
                       cfg.train_options());
  auto save = [&](const std::string &name, int64_t step) {
    save_checkpoint((fs::path(out_dir) / name).string(), model, reg, cfg,
                    step, &adam);
  };

  int64_t last_step = start_step;
  trainer.run(start_step, [&](const sce::StepInfo &info) {
    log << sce::format_log_line(info) << "\n";
    log.flush();
    last_step = info.step;
    if (info.is_best_val) save("best.sck", info.step);
    if (cfg.checkpoint_every > 0 && info.step % cfg.checkpoint_every == 0) {
      char name[48];
      std::snprintf(name, sizeof(name), "ckpt_%08lld.sck",
                    static_cast<long long>(info.step));
      save(name, info.step);
    }
  });
  save("last.sck", last_step);
  std::cout << "trained to step " << last_step << (trainer.stopped_early()
                                                       ? " (early stop)"
                                                       : "")
            << "; checkpoints in " << out_dir << "\n";
  return 0;
}

int cmd_separate(const std::string &checkpoint_path,
                 const std::string &input_wav, int k,
                 std::optional<uint64_t> seed, const std::string &config_path,
                 std::string out_dir) {
  const Checkpoint ckpt = load_checkpoint(checkpoint_path);
  if (!config_path.empty()) {
    const RunConfig requested = RunConfig::parse_file(config_path);
    SCESEP_CHECK(requested.bins() == ckpt.config.bins(),
                 "separate: config requests F=" << requested.bins()
                                                << " bins but the checkpoint "
                                                   "was trained with F="
                                                << ckpt.config.bins());
  }
  const sce::SceModel model = model_from_checkpoint(ckpt);
  const dsp::PipelineConfig pipe = ckpt.config.pipeline();

  const separate::SeparationResult result = separate::separate_file(
      model.net, input_wav, k, pipe, seed.value_or(1));

  if (out_dir.empty()) {
    out_dir = fs::path(input_wav).parent_path().string();
    if (out_dir.empty()) out_dir = ".";
  }
  fs::create_directories(out_dir);
  const std::string stem = fs::path(input_wav).stem().string();
  for (int c = 0; c < k; ++c) {
    const std::string path =
        (fs::path(out_dir) / (stem + ".source" + std::to_string(c + 1) +
                              ".wav"))
            .string();
    dsp::write_wav(path, result.sources[c]);
    std::cout << path << "\n";
  }
  return 0;
}

int cmd_evaluate(const CommonFlags &flags, const std::string &checkpoint_path,
                 const std::string &manifest_path, int k, bool ideal_mask,
                 const std::string &out_dir) {
  const Checkpoint ckpt = load_checkpoint(checkpoint_path);
  RunConfig cfg = ckpt.config;
  if (!flags.corpus_dir.empty()) cfg.corpus_root = flags.corpus_dir;
  if (!flags.metadata_path.empty()) cfg.corpus_metadata = flags.metadata_path;

  const corpus::SpeakerRegistry reg = build_registry(cfg);
  const std::vector<corpus::MixSpec> mixes =
      corpus::read_manifest(manifest_path, reg);

  eval::EvalOptions options;
  options.clusters = k;
  options.ideal_mask = ideal_mask;
  options.seed = flags.seed.value_or(static_cast<uint64_t>(cfg.seed));

  std::optional<sce::SceModel> model;
  if (!ideal_mask) model = model_from_checkpoint(ckpt);
  const eval::SdrReport report = eval::evaluate_set(
      model ? &model->net : nullptr, reg, mixes, cfg.pipeline(), options);

  // In-set / out-of-set bookkeeping against the training registry.
  const corpus::SpeakerRegistry train_reg = corpus::SpeakerRegistry::
      from_snapshot(ckpt.speaker_ids, ckpt.speaker_genders);
  int in_set = 0;
  for (const corpus::MixSpec &mix : mixes) {
    bool all_known = true;
    for (const corpus::MixSourceSpec &src : mix.sources)
      all_known =
          all_known && train_reg.has(reg.by_index(src.speaker_index).id);
    in_set += all_known ? 1 : 0;
  }

  std::cout << (ideal_mask ? "ideal-mask oracle evaluation\n"
                           : "model evaluation\n");
  std::cout << in_set << "/" << mixes.size()
            << " mixes use only training-set speakers\n";
  std::cout << eval::format_aggregates(report);

  fs::create_directories(out_dir);
  const std::string csv_path = (fs::path(out_dir) / "report.csv").string();
  eval::write_report_csv(csv_path, report);
  std::cout << "report written to " << csv_path << "\n";
  return 0;
}

int cmd_bench(const std::string &out_dir, std::optional<uint64_t> seed) {
  eval::BenchOptions options;
  if (seed) options.seed = *seed;
  const std::vector<eval::BenchRow> rows = eval::bench_loss(options);
  std::cout << eval::format_bench_table(rows);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    const std::string path = (fs::path(out_dir) / "bench.csv").string();
    std::ofstream out(path);
    SCESEP_CHECK(out.is_open(), "bench: cannot create " << path);
    out << "kernel,tf,median_s,reps\n";
    for (const auto &r : rows)
      out << r.kernel << "," << r.tf << "," << r.median_s << "," << r.reps
          << "\n";
    std::cout << "bench written to " << path << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(int argc, char **argv) {
  CLI::App app{"source-contrastive speaker separation"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string out_dir = ".";
  std::string type_name = "random";
  std::string checkpoint_path, manifest_path, input_wav;
  int64_t count = 10;
  int k = 2;
  std::optional<int64_t> steps;
  bool ideal_mask = false;

  auto add_common = [&](CLI::App *cmd, bool with_corpus) {
    cmd->add_option("--config", flags.config_path, "config file");
    cmd->add_option("--seed", flags.seed, "random seed");
    if (with_corpus) {
      cmd->add_option("--corpus", flags.corpus_dir, "corpus root directory");
      cmd->add_option("--metadata", flags.metadata_path,
                      "speaker metadata file");
    }
  };

  CLI::App *config_cmd =
      app.add_subcommand("config", "print the default configuration");
  (void)config_cmd;

  CLI::App *mix_cmd =
      app.add_subcommand("mix", "sample a reproducible mixture manifest");
  add_common(mix_cmd, true);
  mix_cmd->add_option("--type", type_name,
                      "mix type: ff, mm, fm, random, random3");
  mix_cmd->add_option("--count", count, "number of mixes");
  mix_cmd->add_option("--out", out_dir, "output directory");

  CLI::App *train_cmd = app.add_subcommand("train", "train a model");
  add_common(train_cmd, true);
  train_cmd->add_option("--steps", steps, "step budget override");
  train_cmd->add_option("--checkpoint", checkpoint_path,
                        "checkpoint to resume from");
  train_cmd->add_option("--out", out_dir, "output directory");

  CLI::App *sep_cmd =
      app.add_subcommand("separate", "separate a mixture wav into K sources");
  sep_cmd->add_option("--checkpoint", checkpoint_path, "trained checkpoint")
      ->required();
  sep_cmd->add_option("input", input_wav, "input wav file")->required();
  sep_cmd->add_option("--k", k, "number of sources to extract");
  sep_cmd->add_option("--seed", flags.seed, "random seed");
  sep_cmd->add_option("--config", flags.config_path,
                      "config consistency check");
  sep_cmd->add_option("--out", out_dir, "output directory");

  CLI::App *eval_cmd =
      app.add_subcommand("evaluate", "score a manifest of mixes");
  add_common(eval_cmd, true);
  eval_cmd->add_option("--checkpoint", checkpoint_path, "trained checkpoint")
      ->required();
  eval_cmd->add_option("--manifest", manifest_path, "mix manifest")
      ->required();
  eval_cmd->add_option("--k", k, "cluster count (0 = per-mix source count)");
  eval_cmd->add_flag("--ideal-mask", ideal_mask,
                     "use ground-truth labels as masks (oracle upper bound)");
  eval_cmd->add_option("--out", out_dir, "output directory");

  CLI::App *bench_cmd =
      app.add_subcommand("bench", "time the loss kernel scaling");
  bench_cmd->add_option("--seed", flags.seed, "random seed");
  bench_cmd->add_option("--out", out_dir, "output directory for bench.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }

  try {
    if (app.got_subcommand("config")) return cmd_config();
    if (app.got_subcommand("mix"))
      return cmd_mix(flags, type_name, count, out_dir);
    if (app.got_subcommand("train"))
      return cmd_train(flags, steps, checkpoint_path, out_dir);
    if (app.got_subcommand("separate"))
      return cmd_separate(checkpoint_path, input_wav, k, flags.seed,
                          flags.config_path,
                          sep_cmd->count("--out") ? out_dir : "");
    if (app.got_subcommand("evaluate"))
      return cmd_evaluate(flags, checkpoint_path, manifest_path,
                          eval_cmd->count("--k") ? k : 0, ideal_mask, out_dir);
    if (app.got_subcommand("bench"))
      return cmd_bench(bench_cmd->count("--out") ? out_dir : "", flags.seed);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace cli
}  // namespace scesep
