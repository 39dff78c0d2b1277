// scesep/corpus/registry.h

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

#ifndef SCESEP_CORPUS_REGISTRY_H_
#define SCESEP_CORPUS_REGISTRY_H_

#include <cstdint>
#include <string>
#include <vector>

namespace scesep {
namespace corpus {

struct Utterance {
  std::string name;      // file stem without .wav
  std::string path;      // full path
  int64_t samples = 0;
  int sample_rate = 0;
};

struct Speaker {
  std::string id;
  char gender = '?';  // 'F' or 'M'
  std::vector<Utterance> utterances;  // sorted by name
};

// Speaker table with dense indices 0..C-1 assigned by ascending speaker id
// (numeric order when all ids are digits).  Corpus layout is
// root/<speaker_id>/<utterance>.wav with a metadata file of
// "speaker_id|gender" lines ('#' comments allowed; extra metadata entries
// without audio directories are ignored).
class SpeakerRegistry {
 public:
  static SpeakerRegistry build(const std::string &root_dir,
                               const std::string &metadata_file);

  // Reconstructs a registry from checkpoint data (ids and genders in
  // dense-index order; no audio attached).
  static SpeakerRegistry from_snapshot(const std::vector<std::string> &ids,
                                       const std::vector<char> &genders);

  int count() const { return static_cast<int>(speakers_.size()); }
  const Speaker &by_index(int i) const;
  // Returns the dense index or -1 when the id is unknown.
  int index_of(const std::string &id) const;
  bool has(const std::string &id) const { return index_of(id) >= 0; }

  // Dense indices of speakers of one gender ('F' or 'M').
  std::vector<int> indices_of_gender(char gender) const;

 private:
  std::vector<Speaker> speakers_;
};

}  // namespace corpus
}  // namespace scesep

#endif  // SCESEP_CORPUS_REGISTRY_H_
