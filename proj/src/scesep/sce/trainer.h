// scesep/sce/trainer.h

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

#ifndef SCESEP_SCE_TRAINER_H_
#define SCESEP_SCE_TRAINER_H_

#include <functional>
#include <string>

#include "scesep/corpus/mix.h"
#include "scesep/nn/adam.h"
#include "scesep/sce/loss.h"
#include "scesep/sce/model.h"

namespace scesep {
namespace sce {

struct TrainOptions {
  int64_t steps = 1000;       // absolute step budget
  int64_t val_every = 0;      // 0 disables validation
  int64_t val_batches = 4;
  int patience = 10;          // non-improving validations before early stop
  float clip_norm = 5.0f;
  uint64_t seed = 1;
  corpus::MixType mix_type = corpus::MixType::kRandom;
  bool prefetch = true;       // producer thread with a bounded batch queue
};

struct StepInfo {
  int64_t step = 0;
  double wall_ms = 0.0;
  float train_loss = 0.0f;
  bool has_val = false;
  float val_loss = 0.0f;
  bool is_best_val = false;
};

// Log-line contract: "step\twall_ms\ttrain_loss[\tval_loss]".
std::string format_log_line(const StepInfo &info);

// Runs the optimization loop.  The batch for step k depends only on
// (seed, k), so resuming from a checkpoint reproduces the exact
// trajectory of an uninterrupted run.  One producer thread prefetches
// batches through a bounded queue (capacity 4).
class Trainer {
 public:
  Trainer(SceModel &model, nn::Adam &adam, const corpus::SpeakerRegistry &reg,
          const corpus::SplitSpec &splits, const dsp::PipelineConfig &pipeline,
          TrainOptions options);

  // Steps (start_step, options.steps]; on_step fires after every step.
  // Returns the last executed step.
  int64_t run(int64_t start_step,
              const std::function<void(const StepInfo &)> &on_step);

  bool stopped_early() const { return stopped_early_; }
  float best_val_loss() const { return best_val_; }

  // A validation pass usable on its own (fixed seeded batches).
  float validate() const;

 private:
  corpus::Batch batch_for_step(int64_t step) const;

  SceModel &model_;
  nn::Adam &adam_;
  const corpus::SpeakerRegistry &registry_;
  const corpus::SplitSpec &splits_;
  dsp::PipelineConfig pipeline_;
  TrainOptions options_;
  bool stopped_early_ = false;
  float best_val_ = 0.0f;
};

}  // namespace sce
}  // namespace scesep

#endif  // SCESEP_SCE_TRAINER_H_
