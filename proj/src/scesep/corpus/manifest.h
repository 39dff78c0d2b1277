// scesep/corpus/manifest.h

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

#ifndef SCESEP_CORPUS_MANIFEST_H_
#define SCESEP_CORPUS_MANIFEST_H_

#include <string>
#include <vector>

#include "scesep/corpus/mix.h"

namespace scesep {
namespace corpus {

// Mix manifest: reproducible evaluation sets.  One mix per line,
//   mix_id,speaker:utterance:offset,speaker:utterance:offset[,...]
// Speakers are referenced by their string id; offsets are in frames.
// '#' comment lines and blank lines are skipped.

void write_manifest(const std::string &path,
                    const std::vector<MixSpec> &mixes,
                    const SpeakerRegistry &reg);

// Parse errors report the offending line number; unknown speakers or
// utterances are resolved against reg and error with the line content.
std::vector<MixSpec> read_manifest(const std::string &path,
                                   const SpeakerRegistry &reg);

}  // namespace corpus
}  // namespace scesep

#endif  // SCESEP_CORPUS_MANIFEST_H_
