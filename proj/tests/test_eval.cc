// tests/test_eval.cc

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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "scesep/base/error.h"
#include "scesep/base/rng.h"
#include "scesep/corpus/manifest.h"
#include "scesep/eval/bench.h"
#include "scesep/eval/evaluate.h"
#include "scesep/eval/sdr.h"
#include "support/gradcheck.h"
#include "support/toy_corpus.h"

using namespace scesep;
namespace fs = std::filesystem;

namespace {

std::vector<float> sine_vec(double freq, int rate, int64_t n, double amp) {
  std::vector<float> v(n);
  for (int64_t i = 0; i < n; ++i)
    v[i] = static_cast<float>(amp * std::sin(2.0 * M_PI * freq * i / rate));
  return v;
}

std::vector<float> cosine_vec(double freq, int rate, int64_t n, double amp) {
  std::vector<float> v(n);
  for (int64_t i = 0; i < n; ++i)
    v[i] = static_cast<float>(amp * std::cos(2.0 * M_PI * freq * i / rate));
  return v;
}

dsp::Waveform wave_of(std::vector<float> samples, int rate = 10000) {
  dsp::Waveform w;
  w.sample_rate = rate;
  w.samples = std::move(samples);
  return w;
}

}  // namespace

TEST_CASE("si_sdr closed forms") {
  const auto ref = sine_vec(500.0, 10000, 10000, 0.5);

  SUBCASE("exact estimate hits the +60 dB cap") {
    CHECK(eval::si_sdr(ref, ref) == doctest::Approx(60.0));
  }
  SUBCASE("sign flip is scale-invariant") {
    std::vector<float> neg = ref;
    for (float &v : neg) v = -v;
    CHECK(eval::si_sdr(neg, ref) == doctest::Approx(60.0));
  }
  SUBCASE("orthogonal noise of equal energy scores 0 dB") {
    // sin and cos over whole periods are orthogonal with equal energy
    const auto noise = cosine_vec(500.0, 10000, 10000, 0.5);
    std::vector<float> est(ref.size());
    for (size_t i = 0; i < ref.size(); ++i) est[i] = ref[i] + noise[i];
    CHECK(eval::si_sdr(est, ref) == doctest::Approx(0.0).epsilon(1e-3));
  }
  SUBCASE("scale invariance to 1e-6 dB") {
    Rng rng(1);
    std::vector<float> est(ref.size());
    for (size_t i = 0; i < ref.size(); ++i)
      est[i] = ref[i] + static_cast<float>(0.1 * rng.uniform(-1.0, 1.0));
    const double base = eval::si_sdr(est, ref);
    for (float alpha : {2.0f, -3.0f, 0.125f}) {
      std::vector<float> scaled(est.size());
      for (size_t i = 0; i < est.size(); ++i) scaled[i] = alpha * est[i];
      CHECK(std::fabs(eval::si_sdr(scaled, ref) - base) < 1e-6);
    }
  }
  SUBCASE("silent reference is an error") {
    std::vector<float> zeros(100, 0.0f);
    CHECK_THROWS_AS(eval::si_sdr(ref, zeros), Error);
  }
}

TEST_CASE("best_permutation_sdr") {
  const auto a = sine_vec(300.0, 10000, 8000, 0.5);
  const auto b = cosine_vec(900.0, 10000, 8000, 0.4);

  SUBCASE("swapped estimates recover the crossing assignment") {
    const auto res = eval::best_permutation_sdr({wave_of(b), wave_of(a)},
                                                {wave_of(a), wave_of(b)});
    CHECK(res.assignment == std::vector<int>{1, 0});
    CHECK(res.sdr_db[0] == doctest::Approx(60.0));
    CHECK(res.sdr_db[1] == doctest::Approx(60.0));
  }

  SUBCASE("single reference picks the best estimate") {
    const auto res =
        eval::best_permutation_sdr({wave_of(b), wave_of(a)}, {wave_of(a)});
    CHECK(res.assignment == std::vector<int>{1});
  }

  SUBCASE("matches an independent brute force over permutations") {
    Rng rng(2);
    const int m = 3;
    std::vector<dsp::Waveform> refs, ests;
    for (int i = 0; i < m; ++i) {
      std::vector<float> r(4000), e(4000);
      for (auto &v : r) v = static_cast<float>(rng.uniform(-1.0, 1.0));
      for (size_t j = 0; j < e.size(); ++j)
        e[j] = r[j] + static_cast<float>(rng.uniform(-0.5, 0.5));
      refs.push_back(wave_of(std::move(r)));
      ests.push_back(wave_of(std::move(e)));
    }
    std::shuffle(ests.begin(), ests.end(),
                 std::mt19937(7));  // decouple the pairing

    // independent pairwise matrix + next_permutation search
    double sdr[3][3];
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c)
        sdr[r][c] = eval::si_sdr(ests[c].samples, refs[r].samples);
    std::vector<int> perm = {0, 1, 2}, best_perm;
    double best = -1e18;
    do {
      double total = 0.0;
      for (int r = 0; r < m; ++r) total += sdr[r][perm[r]];
      if (total > best) {
        best = total;
        best_perm = perm;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));

    const auto res = eval::best_permutation_sdr(ests, refs);
    CHECK(res.assignment == best_perm);
    CHECK(res.mean_db == doctest::Approx(best / m).epsilon(1e-9));
  }

  SUBCASE("invariant to estimate ordering") {
    const auto res1 = eval::best_permutation_sdr({wave_of(a), wave_of(b)},
                                                 {wave_of(a), wave_of(b)});
    const auto res2 = eval::best_permutation_sdr({wave_of(b), wave_of(a)},
                                                 {wave_of(a), wave_of(b)});
    std::vector<double> d1 = res1.sdr_db, d2 = res2.sdr_db;
    std::sort(d1.begin(), d1.end());
    std::sort(d2.begin(), d2.end());
    for (size_t i = 0; i < d1.size(); ++i)
      CHECK(d1[i] == doctest::Approx(d2[i]).epsilon(1e-9));
  }

  SUBCASE("fewer estimates than references is an error") {
    CHECK_THROWS_AS(
        eval::best_permutation_sdr({wave_of(a)}, {wave_of(a), wave_of(b)}),
        Error);
  }
}

TEST_CASE("evaluate_set with the ideal-mask oracle on band mixes") {
  const fs::path dir = fs::temp_directory_path() / "scesep_eval_toy";
  fs::remove_all(dir);
  testsupport::ToyCorpusOptions opt;
  opt.utterances_per_speaker = 4;
  opt.duration_s = 1.2;
  const testsupport::ToyCorpus tc = testsupport::make_toy_corpus(
      dir.string(), testsupport::toy_inset_bands(), opt);
  const auto reg = corpus::SpeakerRegistry::build(tc.root, tc.metadata);

  dsp::PipelineConfig cfg;
  cfg.sample_rate = 10000;
  cfg.window = 256;
  cfg.hop = 128;

  std::vector<corpus::MixSpec> mixes;
  const char *pairs[3][2] = {{"s01", "s03"}, {"s02", "s04"}, {"s01", "s04"}};
  for (int i = 0; i < 3; ++i) {
    corpus::MixSpec spec;
    spec.id = "m" + std::to_string(i);
    spec.sources = {{reg.index_of(pairs[i][0]), "utt000", 0},
                    {reg.index_of(pairs[i][1]), "utt001", 0}};
    mixes.push_back(spec);
  }

  eval::EvalOptions options;
  options.ideal_mask = true;
  options.seed = 3;
  const auto report = eval::evaluate_set(nullptr, reg, mixes, cfg, options);

  CHECK(report.rows.size() == mixes.size() * 2);  // one row per source
  // every manifest mix appears
  for (const auto &mix : mixes) {
    int found = 0;
    for (const auto &row : report.rows)
      if (row.mix_id == mix.id) ++found;
    CHECK(found == 2);
  }
  // the ideal mask on band-disjoint sources is a strong upper bound
  for (const auto &row : report.rows) CHECK(row.improvement_db > 10.0);

  // aggregates: realized gender types plus "all"
  bool has_all = false;
  for (const auto &agg : report.aggregates) {
    if (agg.mix_type == "all") {
      has_all = true;
      CHECK(agg.rows == static_cast<int>(report.rows.size()));
    }
  }
  CHECK(has_all);

  SUBCASE("csv report layout") {
    const std::string csv = (dir / "report.csv").string();
    eval::write_report_csv(csv, report);
    std::ifstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line ==
          "mix_id,mix_type,source_idx,sdr_mix_db,sdr_est_db,"
          "sdr_improvement_db");
    int rows = 0, aggs = 0;
    while (std::getline(in, line)) {
      if (line.rfind("AGG,", 0) == 0)
        ++aggs;
      else
        ++rows;
    }
    CHECK(rows == static_cast<int>(report.rows.size()));
    CHECK(aggs == static_cast<int>(report.aggregates.size()));
  }

  SUBCASE("unresolvable manifest entries surface as errors") {
    corpus::MixSpec bad;
    bad.id = "broken";
    bad.sources = {{reg.index_of("s01"), "nope", 0},
                   {reg.index_of("s02"), "utt000", 0}};
    CHECK_THROWS_AS(
        eval::evaluate_set(nullptr, reg, {bad}, cfg, options), Error);
  }
}

TEST_CASE("affinity reference kernel gradient") {
  Rng rng(4);
  const int64_t n = 6, e = 3, m = 2;
  std::vector<float> v(n * e), y(n * m, -1.0f);
  for (auto &x : v) x = static_cast<float>(rng.uniform(-1.0, 1.0));
  for (int64_t i = 0; i < n; ++i) y[i * m + (i % m)] = 1.0f;

  std::vector<float> grad;
  eval::affinity_loss_fwd_bwd(v.data(), y.data(), n, e, m, &grad);

  auto f = [&](const std::vector<double> &vv) {
    double loss = 0.0;
    for (int64_t p = 0; p < n; ++p)
      for (int64_t q = 0; q < n; ++q) {
        double vvdot = 0.0, yy = 0.0;
        for (int64_t i = 0; i < e; ++i)
          vvdot += vv[p * e + i] * vv[q * e + i];
        for (int64_t i = 0; i < m; ++i)
          yy += static_cast<double>(y[p * m + i]) * y[q * m + i];
        loss += (vvdot - yy) * (vvdot - yy);
      }
    return loss;
  };
  const auto fd = testsupport::numerical_gradient(
      f, testsupport::to_double(v), 1e-4);
  CHECK(testsupport::gradient_rel_err(
            fd, testsupport::to_double(grad)) < 1e-3);
}

TEST_CASE("bench_loss produces timed rows for every size") {
  eval::BenchOptions options;
  options.batch = 2;
  options.frames_base = 4;
  options.bins = 33;
  options.embed_dim = 8;
  options.reps = 3;
  options.include_affinity = true;
  const auto rows = eval::bench_loss(options);
  REQUIRE(rows.size() == 6);  // 3 sce + 3 affinity
  for (const auto &row : rows) {
    CHECK(row.median_s > 0.0);
    CHECK(row.reps >= 3);  // sce rows pool repetitions across passes
  }
  CHECK(rows[0].kernel == "sce");
  CHECK(rows[1].tf == 2 * rows[0].tf);
  CHECK(rows[3].kernel == "affinity");
  CHECK(!eval::format_bench_table(rows).empty());
}
