// tests/test_sce.cc

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

#include <cmath>

#include "doctest.h"
#include "scesep/autograd/ops.h"
#include "scesep/base/error.h"
#include "scesep/base/rng.h"
#include "scesep/sce/loss.h"
#include "scesep/sce/model.h"
#include "scesep/sce/report.h"
#include "scesep/sce/trainer.h"
#include "support/gradcheck.h"
#include "support/ref_model.h"

using namespace scesep;
using ag::Tensor;
using testsupport::gradient_rel_err;
using testsupport::numerical_gradient;
using testsupport::to_double;

namespace {

Tensor random_tensor(ag::Shape shape, Rng &rng, bool requires_grad,
                     double scale = 1.0) {
  Tensor t = Tensor::uninit(std::move(shape), requires_grad);
  for (int64_t i = 0; i < t.numel(); ++i)
    t.data()[i] = static_cast<float>(rng.uniform(-scale, scale));
  return t;
}

std::vector<float> one_hot_labels(int64_t cells, int64_t m, Rng &rng) {
  std::vector<float> y(static_cast<size_t>(cells * m), -1.0f);
  for (int64_t i = 0; i < cells; ++i)
    y[i * m + static_cast<int64_t>(rng.below(m))] = 1.0f;
  return y;
}

// A synthetic batch whose features/labels need no corpus on disk.
corpus::Batch synthetic_batch(const sce::ModelConfig &cfg, int64_t m,
                              uint64_t seed) {
  Rng rng(seed);
  corpus::Batch batch;
  batch.batch = cfg.batch;
  batch.frames = cfg.frames;
  batch.bins = cfg.bins;
  batch.sources = m;
  const int64_t cells = cfg.batch * cfg.frames * cfg.bins;
  batch.features.resize(cells);
  for (auto &v : batch.features)
    v = static_cast<float>(rng.uniform(0.0, 1.0));
  batch.labels = one_hot_labels(cells, m, rng);
  for (int64_t b = 0; b < cfg.batch; ++b) {
    const int64_t first = static_cast<int64_t>(rng.below(cfg.speakers));
    int64_t second = static_cast<int64_t>(rng.below(cfg.speakers));
    while (second == first)
      second = static_cast<int64_t>(rng.below(cfg.speakers));
    batch.speaker_indices.push_back(first);
    batch.speaker_indices.push_back(second);
  }
  return batch;
}

sce::ModelConfig micro_config() {
  sce::ModelConfig cfg;
  cfg.frames = 2;
  cfg.bins = 3;
  cfg.embed_dim = 2;
  cfg.hidden = 4;
  cfg.batch = 1;
  cfg.speakers = 3;
  return cfg;
}

}  // namespace

TEST_CASE("sce_loss closed forms") {
  SUBCASE("zero embeddings give per-bin loss ln 2") {
    const int64_t B = 2, T = 3, F = 4, E = 5, M = 2;
    Rng rng(1);
    Tensor vi = Tensor::zeros({B, T, F, E});
    Tensor vo = Tensor::zeros({B, M, E});
    Tensor y = Tensor::from({B, T, F, M},
                            one_hot_labels(B * T * F, M, rng));
    const float loss = sce::sce_loss(vi, vo, y).item();
    const double per_bin = loss / (T * F);
    CHECK(std::fabs(per_bin - std::log(2.0)) < 1e-6);
  }

  SUBCASE("worked scalar case D = (2, -1), Y = (+1, -1)") {
    // vi = [1], vo rows [2], [-1] with E = 1 give exactly those dots.
    Tensor vi = Tensor::from({1, 1, 1, 1}, {1.0f});
    Tensor vo = Tensor::from({1, 2, 1}, {2.0f, -1.0f});
    Tensor y = Tensor::from({1, 1, 1, 2}, {1.0f, -1.0f});
    const float loss = sce::sce_loss(vi, vo, y).item();
    CHECK(std::fabs(loss - 0.2201) < 1e-4);
  }

  SUBCASE("correct-label loss falls monotonically as D grows") {
    float prev = 1e9f;
    for (float d : {0.0f, 1.0f, 4.0f, 20.0f, 80.0f}) {
      Tensor vi = Tensor::from({1, 1, 1, 1}, {1.0f});
      Tensor vo = Tensor::from({1, 2, 1}, {d, -d});
      Tensor y = Tensor::from({1, 1, 1, 2}, {1.0f, -1.0f});
      const float loss = sce::sce_loss(vi, vo, y).item();
      CHECK(std::isfinite(loss));
      CHECK(loss < prev);
      prev = loss;
    }
    CHECK(prev < 1e-4f);  // tends to zero
  }

  SUBCASE("labels other than +1/-1 are rejected") {
    Tensor vi = Tensor::zeros({1, 1, 1, 1});
    Tensor vo = Tensor::zeros({1, 2, 1});
    Tensor bad = Tensor::from({1, 1, 1, 2}, {1.0f, 0.0f});
    CHECK_THROWS_AS(sce::sce_loss(vi, vo, bad), Error);
  }

  SUBCASE("per-bin-mean variant rescales by T*F") {
    const int64_t B = 1, T = 2, F = 2, E = 1, M = 2;
    Rng rng(2);
    Tensor vi = random_tensor({B, T, F, E}, rng, false);
    Tensor vo = random_tensor({B, M, E}, rng, false);
    Tensor y = Tensor::from({B, T, F, M}, one_hot_labels(T * F, M, rng));
    const float sum_form = sce::sce_loss(vi, vo, y, false).item();
    const float mean_form = sce::sce_loss(vi, vo, y, true).item();
    CHECK(mean_form == doctest::Approx(sum_form / (T * F)).epsilon(1e-5));
  }
}

TEST_CASE("sce_loss is invariant under simultaneous M-axis permutation") {
  const int64_t B = 2, T = 2, F = 3, E = 4, M = 3;
  Rng rng(3);
  Tensor vi = random_tensor({B, T, F, E}, rng, false);
  Tensor vo = random_tensor({B, M, E}, rng, false);
  Tensor y = Tensor::from({B, T, F, M}, one_hot_labels(B * T * F, M, rng));
  const float base = sce::sce_loss(vi, vo, y).item();

  // permutation (2, 0, 1) applied to the M axis of both Y and V_o
  const int perm[3] = {2, 0, 1};
  std::vector<float> vo_p(vo.numel()), y_p(y.numel());
  for (int64_t b = 0; b < B; ++b)
    for (int64_t m = 0; m < M; ++m)
      for (int64_t e = 0; e < E; ++e)
        vo_p[(b * M + m) * E + e] = vo.data()[(b * M + perm[m]) * E + e];
  for (int64_t i = 0; i < B * T * F; ++i)
    for (int64_t m = 0; m < M; ++m)
      y_p[i * M + m] = y.data()[i * M + perm[m]];

  const float permuted = sce::sce_loss(Tensor::from({B, T, F, E}, vi.to_vector()),
                                       Tensor::from({B, M, E}, vo_p),
                                       Tensor::from({B, T, F, M}, y_p))
                             .item();
  CHECK(std::fabs(base - permuted) < 1e-6);
}

TEST_CASE("embed shape contract and errors") {
  sce::ModelConfig cfg = micro_config();
  sce::SceModel model = sce::SceModel::init(cfg, 5);

  SUBCASE("output is B x T x F x E for any T") {
    for (int64_t t : {1, 2, 7}) {
      Tensor x = Tensor::full({2, t, cfg.bins}, 0.3f);
      Tensor vi = model.net.embed(x);
      CHECK(vi.shape() == ag::Shape{2, t, cfg.bins, cfg.embed_dim});
    }
  }

  SUBCASE("F mismatch is rejected") {
    CHECK_THROWS_AS(model.net.embed(Tensor::zeros({1, 2, cfg.bins + 1})),
                    Error);
  }

  SUBCASE("zero dense layer gives all-zero embeddings") {
    sce::SceModel zeroed = sce::SceModel::init(cfg, 5);
    std::fill(zeroed.net.dense.w.data(),
              zeroed.net.dense.w.data() + zeroed.net.dense.w.numel(), 0.0f);
    std::fill(zeroed.net.dense.bias.data(),
              zeroed.net.dense.bias.data() + zeroed.net.dense.bias.numel(),
              0.0f);
    Tensor vi = zeroed.net.embed(Tensor::full({1, 2, cfg.bins}, 0.5f));
    for (int64_t i = 0; i < vi.numel(); ++i) CHECK(vi.data()[i] == 0.0f);
  }

  SUBCASE("different inputs give different embeddings under random init") {
    Rng rng(9);
    Tensor a = random_tensor({1, 2, cfg.bins}, rng, false, 0.5);
    Tensor b = random_tensor({1, 2, cfg.bins}, rng, false, 0.5);
    Tensor va = model.net.embed(a);
    Tensor vb = model.net.embed(b);
    double diff = 0.0;
    for (int64_t i = 0; i < va.numel(); ++i)
      diff += std::fabs(static_cast<double>(va.data()[i]) - vb.data()[i]);
    CHECK(diff > 1e-6);
  }
}

TEST_CASE("gather_speakers keeps order and isolates unused rows") {
  sce::ModelConfig cfg = micro_config();
  cfg.speakers = 5;
  sce::SceModel model = sce::SceModel::init(cfg, 5);

  ag::Tape tape;
  Tensor vo = sce::gather_speakers(model.speaker_table, {0, 1, 1, 2}, 2, 2);
  CHECK(vo.shape() == ag::Shape{2, 2, cfg.embed_dim});
  for (int64_t e = 0; e < cfg.embed_dim; ++e) {
    CHECK(vo.data()[e] == model.speaker_table.data()[e]);
    CHECK(vo.data()[cfg.embed_dim + e] ==
          model.speaker_table.data()[cfg.embed_dim + e]);
  }
  tape.backward(ag::sum(vo));
  // speaker 1 appears twice, speaker 0 and 2 once, others never
  const float *g = model.speaker_table.grad();
  CHECK(g[0 * cfg.embed_dim] == doctest::Approx(1.0));
  CHECK(g[1 * cfg.embed_dim] == doctest::Approx(2.0));
  CHECK(g[2 * cfg.embed_dim] == doctest::Approx(1.0));
  // a speaker absent from the batch gets exactly zero gradient
  CHECK(g[3 * cfg.embed_dim] == 0.0f);

  CHECK_THROWS_AS(sce::gather_speakers(model.speaker_table, {5, 0}, 1, 2),
                  Error);
}

TEST_CASE("full pipeline gradient matches the double reference") {
  sce::ModelConfig cfg = micro_config();
  sce::SceModel model = sce::SceModel::init(cfg, 7);
  const corpus::Batch batch = synthetic_batch(cfg, 2, 11);

  // autograd gradients
  {
    ag::Tape tape;
    Tensor features = Tensor::from({cfg.batch, cfg.frames, cfg.bins},
                                   batch.features);
    Tensor labels = Tensor::from({cfg.batch, cfg.frames, cfg.bins, 2},
                                 batch.labels);
    Tensor vi = model.net.embed(features);
    Tensor vo = sce::gather_speakers(model.speaker_table,
                                     batch.speaker_indices, cfg.batch, 2);
    tape.backward(sce::sce_loss(vi, vo, labels));
  }

  testsupport::RefPipeline ref;
  ref.config = cfg;
  ref.sources = 2;
  const std::vector<double> params0 = testsupport::flatten_params(model);
  REQUIRE(static_cast<int64_t>(params0.size()) == ref.param_count());

  auto f = [&](const std::vector<double> &p) {
    return ref.loss(p, to_double(batch.features), to_double(batch.labels),
                    batch.speaker_indices);
  };
  const std::vector<double> fd = numerical_gradient(f, params0);
  const std::vector<double> got = testsupport::flatten_grads(model);
  CHECK(gradient_rel_err(fd, got) < 1e-3);
}

TEST_CASE("train_step reduces loss on a frozen batch and is deterministic") {
  sce::ModelConfig cfg;
  cfg.frames = 6;
  cfg.bins = 9;
  cfg.embed_dim = 4;
  cfg.hidden = 8;
  cfg.batch = 4;
  cfg.speakers = 4;
  const corpus::Batch batch = synthetic_batch(cfg, 2, 17);

  auto run = [&](int steps) {
    sce::SceModel model = sce::SceModel::init(cfg, 23);
    nn::AdamConfig adam_cfg;
    nn::Adam adam(model.parameters(), adam_cfg);
    std::vector<float> losses;
    for (int i = 0; i < steps; ++i)
      losses.push_back(sce::train_step(model, batch, adam, 5.0f));
    return losses;
  };

  const auto losses = run(50);
  CHECK(losses.back() < losses.front());
  // ln 2 starting point: uniform init keeps the initial dots small
  CHECK(losses.front() ==
        doctest::Approx(cfg.frames * cfg.bins * std::log(2.0)).epsilon(0.15));

  // identical seeds give identical trajectories
  const auto again = run(50);
  CHECK(losses == again);
}

TEST_CASE("one small step decreases loss (with halved-lr retries)") {
  sce::ModelConfig cfg;
  cfg.frames = 4;
  cfg.bins = 5;
  cfg.embed_dim = 3;
  cfg.hidden = 4;
  cfg.batch = 2;
  cfg.speakers = 3;
  const corpus::Batch batch = synthetic_batch(cfg, 2, 29);

  float lr = 1e-4f;
  bool decreased = false;
  for (int attempt = 0; attempt < 5 && !decreased; ++attempt, lr *= 0.5f) {
    sce::SceModel model = sce::SceModel::init(cfg, 31);
    nn::AdamConfig adam_cfg;
    adam_cfg.lr = lr;
    nn::Adam adam(model.parameters(), adam_cfg);
    const float before = sce::train_step(model, batch, adam, 5.0f);
    const float after = sce::eval_loss(model, batch);
    decreased = after < before;
  }
  CHECK(decreased);
}

TEST_CASE("cosine separation report") {
  const int64_t E = 3;

  SUBCASE("identical within, orthogonal across") {
    // two groups of two vectors each: e0 and e1
    std::vector<float> vi = {1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0};
    std::vector<float> labels = {1, -1, -1, 1, 1, -1, -1, 1};
    const auto rep =
        sce::cosine_separation_report(vi.data(), 1, 2, 2, E, labels.data(), 2);
    CHECK(rep.vectors == 4);
    CHECK(rep.within == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.across == doctest::Approx(0.0).epsilon(1e-6));
  }

  SUBCASE("random vectors score within roughly equal to across") {
    Rng rng(41);
    const int64_t T = 16, F = 16;
    std::vector<float> vi(T * F * E);
    for (auto &v : vi) v = static_cast<float>(rng.uniform(-1.0, 1.0));
    std::vector<float> labels = one_hot_labels(T * F, 2, rng);
    const auto rep =
        sce::cosine_separation_report(vi.data(), 1, T, F, E, labels.data(), 2);
    CHECK(std::fabs(rep.within - rep.across) < 0.1);
  }

  SUBCASE("invariant to a common rotation") {
    Rng rng(43);
    const int64_t T = 4, F = 4;
    std::vector<float> vi(T * F * E);
    for (auto &v : vi) v = static_cast<float>(rng.uniform(-1.0, 1.0));
    std::vector<float> labels = one_hot_labels(T * F, 2, rng);
    const auto base =
        sce::cosine_separation_report(vi.data(), 1, T, F, E, labels.data(), 2);

    // rotate all vectors by the same rotation in the (0, 1) plane
    const double c = std::cos(0.7), s = std::sin(0.7);
    std::vector<float> rotated = vi;
    for (int64_t i = 0; i < T * F; ++i) {
      const float x = vi[i * E], y = vi[i * E + 1];
      rotated[i * E] = static_cast<float>(c * x - s * y);
      rotated[i * E + 1] = static_cast<float>(s * x + c * y);
    }
    const auto rot = sce::cosine_separation_report(rotated.data(), 1, T, F, E,
                                                   labels.data(), 2);
    CHECK(rot.within == doctest::Approx(base.within).epsilon(1e-4));
    CHECK(rot.across == doctest::Approx(base.across).epsilon(1e-4));
  }
}

TEST_CASE("default config wires a 600-wide BLSTM") {
  sce::ModelConfig cfg;  // stock defaults: 600-wide BLSTM over 257 bins
  cfg.speakers = 4;
  REQUIRE(cfg.hidden == 600);
  REQUIRE(cfg.bins == 257);
  sce::SceModel model = sce::SceModel::init(cfg, 1);
  CHECK(model.net.blstm1.dir_hidden() == 300);

  Tensor x = Tensor::full({1, 1, cfg.bins}, 0.1f);
  Tensor r1 = nn::blstm_forward(model.net.blstm1, x);
  CHECK(r1.shape() == ag::Shape{1, 1, 600});
  Tensor vi = model.net.embed(x);
  CHECK(vi.shape() == ag::Shape{1, 1, 257, 40});
}

TEST_CASE("stock-dimension train step starts at the ln 2 level") {
  sce::ModelConfig cfg;  // H=600, F=257, E=40 defaults
  cfg.batch = 2;
  cfg.frames = 10;
  cfg.speakers = 251;
  sce::SceModel model = sce::SceModel::init(cfg, 1);
  corpus::Batch batch = synthetic_batch(cfg, 2, 77);
  nn::Adam adam(model.parameters(), {});
  const float loss = sce::train_step(model, batch, adam, 5.0f);
  CHECK(std::isfinite(loss));
  CHECK(loss / (cfg.frames * cfg.bins) ==
        doctest::Approx(std::log(2.0)).epsilon(0.02));
}

TEST_CASE("train log line format") {
  sce::StepInfo info;
  info.step = 12;
  info.wall_ms = 3.5;
  info.train_loss = 1.25f;
  CHECK(sce::format_log_line(info) == "12\t3.5\t1.25");
  info.has_val = true;
  info.val_loss = 2.5f;
  CHECK(sce::format_log_line(info) == "12\t3.5\t1.25\t2.5");
}
