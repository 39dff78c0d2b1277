// scesep/corpus/manifest.cc

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

#include "scesep/corpus/manifest.h"

#include <fstream>
#include <sstream>

#include "scesep/base/error.h"

namespace scesep {
namespace corpus {

void write_manifest(const std::string &path, const std::vector<MixSpec> &mixes,
                    const SpeakerRegistry &reg) {
  std::ofstream out(path);
  SCESEP_CHECK(out.is_open(), "manifest: cannot create " << path);
  for (const MixSpec &mix : mixes) {
    out << mix.id;
    for (const MixSourceSpec &src : mix.sources)
      out << "," << reg.by_index(src.speaker_index).id << ":" << src.utterance
          << ":" << src.offset_frames;
    out << "\n";
  }
  SCESEP_CHECK(out.good(), "manifest: write failed for " << path);
}

std::vector<MixSpec> read_manifest(const std::string &path,
                                   const SpeakerRegistry &reg) {
  std::ifstream in(path);
  SCESEP_CHECK(in.is_open(), "manifest: cannot open " << path);

  std::vector<MixSpec> mixes;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;

    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    SCESEP_CHECK(fields.size() == 3 || fields.size() == 4,
                 "manifest: line " << line_no
                                   << ": expected 2 or 3 sources, got "
                                   << (fields.empty() ? 0 : fields.size() - 1)
                                   << ": " << line);

    MixSpec mix;
    mix.id = fields[0];
    SCESEP_CHECK(!mix.id.empty(), "manifest: line " << line_no
                                                    << ": empty mix id");
    for (size_t i = 1; i < fields.size(); ++i) {
      const std::string &f = fields[i];
      const size_t c1 = f.find(':');
      const size_t c2 = (c1 == std::string::npos) ? std::string::npos
                                                  : f.find(':', c1 + 1);
      SCESEP_CHECK(c1 != std::string::npos && c2 != std::string::npos,
                   "manifest: line " << line_no
                                     << ": source field must be "
                                        "speaker:utterance:offset, got '"
                                     << f << "'");
      MixSourceSpec src;
      const std::string speaker_id = f.substr(0, c1);
      src.speaker_index = reg.index_of(speaker_id);
      SCESEP_CHECK(src.speaker_index >= 0,
                   "manifest: line " << line_no << ": unknown speaker '"
                                     << speaker_id << "'");
      src.utterance = f.substr(c1 + 1, c2 - c1 - 1);
      try {
        src.offset_frames = std::stoll(f.substr(c2 + 1));
      } catch (const std::exception &) {
        SCESEP_FAIL("manifest: line " << line_no << ": bad offset in '" << f
                                      << "'");
      }
      SCESEP_CHECK(src.offset_frames >= 0,
                   "manifest: line " << line_no << ": negative offset");
      mix.sources.push_back(std::move(src));
    }
    mixes.push_back(std::move(mix));
  }
  return mixes;
}

}  // namespace corpus
}  // namespace scesep
