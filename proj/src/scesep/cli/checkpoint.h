// scesep/cli/checkpoint.h

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

#ifndef SCESEP_CLI_CHECKPOINT_H_
#define SCESEP_CLI_CHECKPOINT_H_

#include <optional>
#include <string>
#include <vector>

#include "scesep/cli/run_config.h"
#include "scesep/corpus/registry.h"
#include "scesep/nn/adam.h"
#include "scesep/sce/model.h"

namespace scesep {
namespace cli {

// Checkpoint file layout:
//   8-byte magic "SCESEP01"
//   u64 little-endian header length
//   UTF-8 header (sectioned key-value text): run config snapshot, speaker
//   registry snapshot, tensor directory (name, shape, byte offset/length)
//   concatenated little-endian float32 payloads
inline constexpr char kCheckpointMagic[8] = {'S', 'C', 'E', 'S',
                                             'E', 'P', '0', '1'};
inline constexpr int kCheckpointVersion = 1;

struct Checkpoint {
  int version = kCheckpointVersion;
  int64_t step = 0;
  int64_t adam_steps = 0;
  RunConfig config;
  std::vector<std::string> speaker_ids;  // dense-index order
  std::vector<char> speaker_genders;
  std::vector<std::pair<std::string, ag::Tensor>> tensors;

  const ag::Tensor *find(const std::string &name) const;
};

// Writes model parameters, and optimizer moments when adam is non-null
// (adam.m.<name> / adam.v.<name> blobs), so training can resume exactly.
void save_checkpoint(const std::string &path, const sce::SceModel &model,
                     const corpus::SpeakerRegistry &registry,
                     const RunConfig &config, int64_t step,
                     const nn::Adam *adam);

Checkpoint load_checkpoint(const std::string &path);

// Rebuilds the model from a checkpoint; every model parameter must be
// present with a matching shape.
sce::SceModel model_from_checkpoint(const Checkpoint &ckpt);

// Restores Adam moments (and the step count) saved alongside the model.
// Returns false when the checkpoint has no optimizer state.
bool restore_adam(const Checkpoint &ckpt, const sce::SceModel &model,
                  nn::Adam *adam);

}  // namespace cli
}  // namespace scesep

#endif  // SCESEP_CLI_CHECKPOINT_H_
