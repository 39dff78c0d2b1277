// scesep/eval/evaluate.h

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

#ifndef SCESEP_EVAL_EVALUATE_H_
#define SCESEP_EVAL_EVALUATE_H_

#include <string>
#include <vector>

#include "scesep/corpus/manifest.h"
#include "scesep/sce/model.h"

namespace scesep {
namespace eval {

struct EvalOptions {
  int clusters = 0;        // 0 = per-mix source count
  bool ideal_mask = false; // ground-truth labels as masks (oracle mode)
  uint64_t seed = 1;
  bool parallel = true;
};

struct MixRow {
  std::string mix_id;
  std::string mix_type;  // ff / mm / fm / random3 (realized genders)
  int source_idx = 0;
  double sdr_mix_db = 0.0;
  double sdr_est_db = 0.0;
  double improvement_db = 0.0;
};

struct Aggregate {
  std::string mix_type;  // per realized type, plus "all"
  int rows = 0;
  double mean_mix_db = 0.0;
  double mean_est_db = 0.0;
  double mean_improvement_db = 0.0;
};

struct SdrReport {
  std::vector<MixRow> rows;          // manifest order, one row per source
  std::vector<Aggregate> aggregates;
  // Embedding cluster quality vs the ground-truth labels (model mode only):
  // mean cosine similarity within / across dominant-source groups.
  bool has_embedding_stats = false;
  double cosine_within = 0.0;
  double cosine_across = 0.0;
};

// For each mix: synthesize, separate (model masks or ideal labels),
// permutation-match the estimates against the references and score
// SI-SDR improvement over the raw mixture.  net may be null in ideal-mask
// mode.  References and the mixture baseline go through the same
// analysis/synthesis chain as the estimates.
SdrReport evaluate_set(const sce::EmbeddingNet *net,
                       const corpus::SpeakerRegistry &reg,
                       const std::vector<corpus::MixSpec> &mixes,
                       const dsp::PipelineConfig &cfg,
                       const EvalOptions &options);

// CSV: header, one row per (mix, source), then AGG footer rows.
void write_report_csv(const std::string &path, const SdrReport &report);

// Aggregate table for stdout.
std::string format_aggregates(const SdrReport &report);

}  // namespace eval
}  // namespace scesep

#endif  // SCESEP_EVAL_EVALUATE_H_
