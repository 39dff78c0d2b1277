// scesep/eval/evaluate.cc

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

#include "scesep/eval/evaluate.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "scesep/base/error.h"
#include "scesep/base/parallel.h"
#include "scesep/eval/sdr.h"
#include "scesep/sce/report.h"
#include "scesep/separate/separate.h"

namespace scesep {
namespace eval {

namespace {

std::string realized_mix_type(const corpus::SpeakerRegistry &reg,
                              const corpus::MixSpec &spec) {
  if (spec.sources.size() == 3) return "random3";
  char a = reg.by_index(spec.sources[0].speaker_index).gender;
  char b = reg.by_index(spec.sources[1].speaker_index).gender;
  if (a == 'F' && b == 'F') return "ff";
  if (a == 'M' && b == 'M') return "mm";
  return "fm";
}

struct MixOutcome {
  std::vector<MixRow> rows;
  sce::CosineReport cosine;  // vectors == 0 when unavailable
};

MixOutcome evaluate_one(const sce::EmbeddingNet *net,
                        const corpus::SpeakerRegistry &reg,
                        const corpus::MixSpec &spec,
                        const dsp::PipelineConfig &cfg,
                        const EvalOptions &options, uint64_t mix_seed) {
  const corpus::MixResult mix = corpus::make_mix(reg, spec, cfg, 0);
  const int m = static_cast<int>(mix.sources.size());

  const dsp::Waveform mixture_wave = dsp::synthesize(mix.mixture, cfg);
  std::vector<dsp::Waveform> references;
  for (const dsp::Spectrogram &s : mix.sources)
    references.push_back(dsp::synthesize(s, cfg));

  MixOutcome outcome;
  std::vector<dsp::Waveform> estimates;
  if (options.ideal_mask) {
    // Ground-truth loudest-source labels as binary masks.
    const int64_t cells = mix.mixture.frames * mix.mixture.bins;
    for (int c = 0; c < m; ++c) {
      std::vector<float> mask(static_cast<size_t>(cells));
      for (int64_t i = 0; i < cells; ++i)
        mask[i] = 0.5f * (mix.labels[i * m + c] + 1.0f);
      estimates.push_back(
          separate::reconstruct(mix.mixture, mask, cfg.preemphasis));
    }
  } else {
    SCESEP_CHECK(net != nullptr,
                 "evaluate_set: model required unless --ideal-mask is set");
    const int k = options.clusters > 0 ? options.clusters : m;
    separate::SeparationResult sep =
        separate::separate_spectrogram(*net, mix.mixture, k, cfg, mix_seed);
    estimates = std::move(sep.sources);
    outcome.cosine = sce::cosine_separation_report(
        sep.embeddings.data(), 1, mix.mixture.frames, mix.mixture.bins,
        net->embed_dim, mix.labels.data(), m);
  }

  const PermutationResult perm = best_permutation_sdr(estimates, references);

  const std::string type = realized_mix_type(reg, spec);
  for (int r = 0; r < m; ++r) {
    MixRow row;
    row.mix_id = spec.id;
    row.mix_type = type;
    row.source_idx = r;
    row.sdr_mix_db = si_sdr(mixture_wave.samples, references[r].samples);
    row.sdr_est_db = perm.sdr_db[r];
    row.improvement_db = row.sdr_est_db - row.sdr_mix_db;
    outcome.rows.push_back(std::move(row));
  }
  return outcome;
}

}  // namespace

SdrReport evaluate_set(const sce::EmbeddingNet *net,
                       const corpus::SpeakerRegistry &reg,
                       const std::vector<corpus::MixSpec> &mixes,
                       const dsp::PipelineConfig &cfg,
                       const EvalOptions &options) {
  SCESEP_CHECK(!mixes.empty(), "evaluate_set: empty mix list");

  std::vector<MixOutcome> per_mix(mixes.size());
  std::exception_ptr first_error;
  std::mutex error_mu;

  auto work = [&](int64_t lo, int64_t hi) {
    for (int64_t i = lo; i < hi; ++i) {
      try {
        per_mix[i] = evaluate_one(net, reg, mixes[i], cfg, options,
                                  Rng::mix(options.seed, i));
      } catch (...) {
        std::lock_guard<std::mutex> lk(error_mu);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  if (options.parallel)
    parallel_for(0, static_cast<int64_t>(mixes.size()), work);
  else
    work(0, static_cast<int64_t>(mixes.size()));
  if (first_error) std::rethrow_exception(first_error);

  SdrReport report;
  double within = 0.0, across = 0.0;
  int64_t cosine_vectors = 0;
  for (auto &outcome : per_mix) {
    for (auto &row : outcome.rows) report.rows.push_back(std::move(row));
    if (outcome.cosine.vectors > 0) {
      within += outcome.cosine.within * outcome.cosine.vectors;
      across += outcome.cosine.across * outcome.cosine.vectors;
      cosine_vectors += outcome.cosine.vectors;
    }
  }
  if (cosine_vectors > 0) {
    report.has_embedding_stats = true;
    report.cosine_within = within / cosine_vectors;
    report.cosine_across = across / cosine_vectors;
  }

  // Aggregates per realized type plus "all", stable order.
  std::vector<std::string> order;
  std::map<std::string, Aggregate> agg;
  auto feed = [&](const std::string &key, const MixRow &row) {
    if (!agg.count(key)) {
      order.push_back(key);
      agg[key].mix_type = key;
    }
    Aggregate &a = agg[key];
    ++a.rows;
    a.mean_mix_db += row.sdr_mix_db;
    a.mean_est_db += row.sdr_est_db;
    a.mean_improvement_db += row.improvement_db;
  };
  for (const MixRow &row : report.rows) {
    feed(row.mix_type, row);
    feed("all", row);
  }
  for (const std::string &key : order) {
    Aggregate a = agg[key];
    a.mean_mix_db /= a.rows;
    a.mean_est_db /= a.rows;
    a.mean_improvement_db /= a.rows;
    report.aggregates.push_back(a);
  }
  return report;
}

void write_report_csv(const std::string &path, const SdrReport &report) {
  std::ofstream out(path);
  SCESEP_CHECK(out.is_open(), "report: cannot create " << path);
  out << "mix_id,mix_type,source_idx,sdr_mix_db,sdr_est_db,"
         "sdr_improvement_db\n";
  for (const MixRow &r : report.rows)
    out << r.mix_id << "," << r.mix_type << "," << r.source_idx << ","
        << r.sdr_mix_db << "," << r.sdr_est_db << "," << r.improvement_db
        << "\n";
  for (const Aggregate &a : report.aggregates)
    out << "AGG," << a.mix_type << "," << a.rows << "," << a.mean_mix_db << ","
        << a.mean_est_db << "," << a.mean_improvement_db << "\n";
  SCESEP_CHECK(out.good(), "report: write failed for " << path);
}

std::string format_aggregates(const SdrReport &report) {
  std::ostringstream os;
  os << "mix_type        rows   sdr_mix   sdr_est   improvement\n";
  for (const Aggregate &a : report.aggregates) {
    char line[128];
    std::snprintf(line, sizeof(line), "%-14s %5d %9.2f %9.2f %13.2f\n",
                  a.mix_type.c_str(), a.rows, a.mean_mix_db, a.mean_est_db,
                  a.mean_improvement_db);
    os << line;
  }
  if (report.has_embedding_stats) {
    char line[128];
    std::snprintf(line, sizeof(line),
                  "embedding cosine: within %.3f, across %.3f\n",
                  report.cosine_within, report.cosine_across);
    os << line;
  }
  return os.str();
}

}  // namespace eval
}  // namespace scesep
