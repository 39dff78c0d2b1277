// scesep/eval/bench.cc

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

#include "scesep/eval/bench.h"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "scesep/autograd/ops.h"
#include "scesep/base/parallel.h"
#include "scesep/base/rng.h"
#include "scesep/sce/loss.h"

namespace scesep {
namespace eval {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

ag::Tensor random_tensor(ag::Shape shape, Rng &rng, bool requires_grad) {
  ag::Tensor t = ag::Tensor::uninit(std::move(shape), requires_grad);
  float *p = t.data();
  for (int64_t i = 0; i < t.numel(); ++i)
    p[i] = static_cast<float>(rng.uniform(-0.5, 0.5));
  return t;
}

std::vector<float> random_labels(int64_t cells, int64_t m, Rng &rng) {
  std::vector<float> y(static_cast<size_t>(cells * m), -1.0f);
  for (int64_t i = 0; i < cells; ++i)
    y[i * m + static_cast<int64_t>(rng.below(static_cast<uint64_t>(m)))] =
        1.0f;
  return y;
}

}  // namespace

double affinity_loss_fwd_bwd(const float *v, const float *y, int64_t n,
                             int64_t e, int64_t m, std::vector<float> *grad) {
  if (grad) grad->assign(static_cast<size_t>(n * e), 0.0f);
  double loss = 0.0;
  for (int64_t p = 0; p < n; ++p) {
    const float *vp = v + p * e;
    const float *yp = y + p * m;
    float *gp = grad ? grad->data() + p * e : nullptr;
    for (int64_t q = 0; q < n; ++q) {
      const float *vq = v + q * e;
      const float *yq = y + q * m;
      double vv = 0.0;
      for (int64_t i = 0; i < e; ++i)
        vv += static_cast<double>(vp[i]) * vq[i];
      double yy = 0.0;
      for (int64_t i = 0; i < m; ++i)
        yy += static_cast<double>(yp[i]) * yq[i];
      const double diff = vv - yy;
      loss += diff * diff;
      if (gp) {
        // d/dv_p of (v_p.v_q - y_p.y_q)^2, counting the symmetric (q,p)
        // term as well.
        const float c = static_cast<float>(4.0 * diff);
        for (int64_t i = 0; i < e; ++i) gp[i] += c * vq[i];
      }
    }
  }
  return loss;
}

std::vector<BenchRow> bench_loss(const BenchOptions &options) {
  Rng rng(options.seed);
  // Timing runs single-threaded: the measurement is how the kernels scale
  // with T*F, and pool scheduling noise on a loaded box would drown it.
  SerialSection serial;

  // The contrastive kernel is timed one size at a time: fixtures are
  // built, a few untimed repetitions settle the allocator and pages, then
  // the block is measured and the fixtures are released before the next
  // size.  Back-to-back repetitions of one shape are exactly how training
  // runs, so the steady-state block median is the honest per-step cost.
  // The whole sweep runs three times and each size pools its samples, so
  // a seconds-long load transient can corrupt at most one block per size
  // without moving the pooled median.
  constexpr int kPasses = 3;
  std::vector<std::vector<double>> sce_times(options.factors.size());
  for (int pass = 0; pass < kPasses; ++pass) {
    for (size_t fi = 0; fi < options.factors.size(); ++fi) {
      const int64_t frames = options.frames_base * options.factors[fi];
      const int64_t cells = frames * options.bins;
      ag::Tensor vi = random_tensor(
          {options.batch, frames, options.bins, options.embed_dim}, rng,
          true);
      ag::Tensor vo = random_tensor(
          {options.batch, options.sources, options.embed_dim}, rng, true);
      ag::Tensor y = ag::Tensor::from(
          {options.batch, frames, options.bins, options.sources},
          random_labels(options.batch * cells, options.sources, rng));

      for (int rep = 0; rep < options.reps + 4; ++rep) {
        const auto t0 = Clock::now();
        {
          ag::Tape tape;
          ag::Tensor loss = sce::sce_loss(vi, vo, y);
          tape.backward(loss);
        }
        if (rep >= 4) sce_times[fi].push_back(seconds_since(t0));
        vi.zero_grad();
        vo.zero_grad();
      }
    }
  }
  std::vector<BenchRow> rows;
  for (size_t fi = 0; fi < options.factors.size(); ++fi) {
    const int64_t cells =
        options.frames_base * options.factors[fi] * options.bins;
    rows.push_back({"sce", cells, median(sce_times[fi]),
                    kPasses * options.reps});
  }

  if (options.include_affinity) {
    // The quadratic reference repetitions are interleaved across sizes so
    // a load transient cannot inflate one size's whole block and distort
    // the scaling ratio.
    struct AffCase {
      int64_t cells;
      ag::Tensor v;
      std::vector<float> y;
      std::vector<double> times;
    };
    std::vector<AffCase> aff_cases;
    for (int factor : options.factors) {
      const int64_t frames = options.affinity_frames_base * factor;
      const int64_t cells = frames * options.bins;
      AffCase cs;
      cs.cells = cells;
      cs.v = random_tensor({cells, options.embed_dim}, rng, false);
      cs.y = random_labels(cells, options.sources, rng);
      aff_cases.push_back(std::move(cs));
    }
    std::vector<float> grad;
    auto run_aff = [&](AffCase &cs, bool timed) {
      const auto t0 = Clock::now();
      affinity_loss_fwd_bwd(cs.v.data(), cs.y.data(), cs.cells,
                            options.embed_dim, options.sources, &grad);
      if (timed) cs.times.push_back(seconds_since(t0));
    };
    for (auto &cs : aff_cases) run_aff(cs, false);  // warmup
    for (int rep = 0; rep < options.reps; ++rep)
      for (auto &cs : aff_cases) run_aff(cs, true);
    for (auto &cs : aff_cases)
      rows.push_back({"affinity", cs.cells, median(cs.times), options.reps});
  }
  return rows;
}

std::string format_bench_table(const std::vector<BenchRow> &rows) {
  std::ostringstream os;
  os << "kernel      T*F      median_s   reps   scale_vs_prev\n";
  double prev = 0.0;
  std::string prev_kernel;
  for (const BenchRow &r : rows) {
    char line[128];
    const bool same = (r.kernel == prev_kernel);
    if (same)
      std::snprintf(line, sizeof(line), "%-9s %7lld %11.6f %6d %10.2fx\n",
                    r.kernel.c_str(), static_cast<long long>(r.tf),
                    r.median_s, r.reps, r.median_s / prev);
    else
      std::snprintf(line, sizeof(line), "%-9s %7lld %11.6f %6d %10s\n",
                    r.kernel.c_str(), static_cast<long long>(r.tf),
                    r.median_s, r.reps, "-");
    os << line;
    prev = r.median_s;
    prev_kernel = r.kernel;
  }
  return os.str();
}

}  // namespace eval
}  // namespace scesep
