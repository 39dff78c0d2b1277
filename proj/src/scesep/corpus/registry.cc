// scesep/corpus/registry.cc

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

#include "scesep/corpus/registry.h"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>

#include "scesep/base/error.h"
#include "scesep/dsp/waveform.h"

namespace scesep {
namespace corpus {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string &s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool all_digits(const std::string &s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

// Ascending speaker id; numeric order when both ids are numeric.
bool id_less(const std::string &a, const std::string &b) {
  if (all_digits(a) && all_digits(b)) {
    if (a.size() != b.size()) return a.size() < b.size();
  }
  return a < b;
}

std::map<std::string, char> read_metadata(const std::string &path) {
  std::ifstream in(path);
  SCESEP_CHECK(in.is_open(), "registry: cannot open metadata file " << path);
  std::map<std::string, char> genders;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const size_t bar = t.find('|');
    SCESEP_CHECK(bar != std::string::npos,
                 "registry: bad metadata line " << line_no << ": " << line);
    const std::string id = trim(t.substr(0, bar));
    // Tolerate extra |-separated columns (LibriSpeech SPEAKERS.TXT style).
    std::string rest = t.substr(bar + 1);
    const size_t next = rest.find('|');
    if (next != std::string::npos) rest = rest.substr(0, next);
    const std::string g = trim(rest);
    SCESEP_CHECK(g == "F" || g == "M",
                 "registry: unknown gender token '" << g << "' for speaker "
                                                    << id << " at line "
                                                    << line_no);
    genders[id] = g[0];
  }
  return genders;
}

}  // namespace

SpeakerRegistry SpeakerRegistry::build(const std::string &root_dir,
                                       const std::string &metadata_file) {
  SCESEP_CHECK(fs::is_directory(root_dir),
               "registry: corpus root is not a directory: " << root_dir);
  const auto genders = read_metadata(metadata_file);

  std::vector<std::string> ids;
  for (const auto &entry : fs::directory_iterator(root_dir))
    if (entry.is_directory()) ids.push_back(entry.path().filename().string());
  SCESEP_CHECK(!ids.empty(), "registry: no speaker directories under "
                                 << root_dir);
  std::sort(ids.begin(), ids.end(), id_less);

  SpeakerRegistry reg;
  for (const std::string &id : ids) {
    const auto it = genders.find(id);
    SCESEP_CHECK(it != genders.end(),
                 "registry: no metadata entry for discovered speaker " << id);
    Speaker spk;
    spk.id = id;
    spk.gender = it->second;

    std::vector<fs::path> wavs;
    for (const auto &f : fs::directory_iterator(fs::path(root_dir) / id))
      if (f.is_regular_file() && f.path().extension() == ".wav")
        wavs.push_back(f.path());
    SCESEP_CHECK(!wavs.empty(), "registry: speaker " << id << " has no audio");
    std::sort(wavs.begin(), wavs.end());

    for (const fs::path &p : wavs) {
      Utterance u;
      u.name = p.stem().string();
      u.path = p.string();
      const auto info = dsp::wav_info(u.path);
      u.samples = info.first;
      u.sample_rate = info.second;
      spk.utterances.push_back(std::move(u));
    }
    reg.speakers_.push_back(std::move(spk));
  }
  return reg;
}

SpeakerRegistry SpeakerRegistry::from_snapshot(
    const std::vector<std::string> &ids, const std::vector<char> &genders) {
  SCESEP_CHECK(ids.size() == genders.size(),
               "registry snapshot: id/gender count mismatch");
  SpeakerRegistry reg;
  for (size_t i = 0; i < ids.size(); ++i) {
    Speaker spk;
    spk.id = ids[i];
    spk.gender = genders[i];
    reg.speakers_.push_back(std::move(spk));
  }
  return reg;
}

const Speaker &SpeakerRegistry::by_index(int i) const {
  SCESEP_CHECK(i >= 0 && i < count(),
               "registry: speaker index " << i << " out of range [0, "
                                          << count() << ")");
  return speakers_[i];
}

int SpeakerRegistry::index_of(const std::string &id) const {
  for (int i = 0; i < count(); ++i)
    if (speakers_[i].id == id) return i;
  return -1;
}

std::vector<int> SpeakerRegistry::indices_of_gender(char gender) const {
  std::vector<int> out;
  for (int i = 0; i < count(); ++i)
    if (speakers_[i].gender == gender) out.push_back(i);
  return out;
}

}  // namespace corpus
}  // namespace scesep
