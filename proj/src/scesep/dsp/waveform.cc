// scesep/dsp/waveform.cc

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

#include "scesep/dsp/waveform.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "scesep/base/error.h"

namespace scesep {
namespace dsp {

namespace {

uint32_t read_u32(std::istream &in, const std::string &path) {
  unsigned char b[4];
  in.read(reinterpret_cast<char *>(b), 4);
  SCESEP_CHECK(in.good(), "wav: truncated file " << path);
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) |
         (static_cast<uint32_t>(b[3]) << 24);
}

uint16_t read_u16(std::istream &in, const std::string &path) {
  unsigned char b[2];
  in.read(reinterpret_cast<char *>(b), 2);
  SCESEP_CHECK(in.good(), "wav: truncated file " << path);
  return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

void write_u32(std::ostream &out, uint32_t v) {
  const char b[4] = {static_cast<char>(v & 0xff),
                     static_cast<char>((v >> 8) & 0xff),
                     static_cast<char>((v >> 16) & 0xff),
                     static_cast<char>((v >> 24) & 0xff)};
  out.write(b, 4);
}

void write_u16(std::ostream &out, uint16_t v) {
  const char b[2] = {static_cast<char>(v & 0xff),
                     static_cast<char>((v >> 8) & 0xff)};
  out.write(b, 2);
}

struct WavHeader {
  int sample_rate = 0;
  int channels = 0;
  int bits = 0;
  uint32_t data_bytes = 0;
  std::streampos data_pos;
};

WavHeader parse_header(std::istream &in, const std::string &path) {
  char tag[4];
  in.read(tag, 4);
  SCESEP_CHECK(in.good() && std::memcmp(tag, "RIFF", 4) == 0,
               "wav: not a RIFF file: " << path);
  read_u32(in, path);  // riff size
  in.read(tag, 4);
  SCESEP_CHECK(in.good() && std::memcmp(tag, "WAVE", 4) == 0,
               "wav: not a WAVE file: " << path);

  WavHeader h;
  bool have_fmt = false;
  while (in.read(tag, 4)) {
    const uint32_t chunk = read_u32(in, path);
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      const uint16_t format = read_u16(in, path);
      h.channels = read_u16(in, path);
      h.sample_rate = static_cast<int>(read_u32(in, path));
      read_u32(in, path);  // byte rate
      read_u16(in, path);  // block align
      h.bits = read_u16(in, path);
      SCESEP_CHECK(format == 1, "wav: only PCM supported, format tag "
                                    << format << " in " << path);
      if (chunk > 16) in.seekg(chunk - 16, std::ios::cur);
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      h.data_bytes = chunk;
      h.data_pos = in.tellg();
      break;
    } else {
      in.seekg(chunk + (chunk & 1), std::ios::cur);  // chunks are padded
    }
  }
  SCESEP_CHECK(have_fmt && h.data_bytes > 0,
               "wav: missing fmt/data chunk in " << path);
  SCESEP_CHECK(h.channels == 1,
               "wav: expected mono, got " << h.channels << " channels in "
                                          << path);
  SCESEP_CHECK(h.bits == 16,
               "wav: expected 16-bit PCM, got " << h.bits << " bits in "
                                                << path);
  return h;
}

}  // namespace

Waveform read_wav(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  SCESEP_CHECK(in.is_open(), "wav: cannot open " << path);
  const WavHeader h = parse_header(in, path);

  const int64_t count = h.data_bytes / 2;
  std::vector<int16_t> raw(static_cast<size_t>(count));
  in.read(reinterpret_cast<char *>(raw.data()), count * 2);
  SCESEP_CHECK(in.gcount() == count * 2, "wav: truncated data in " << path);

  Waveform w;
  w.sample_rate = h.sample_rate;
  w.samples.resize(raw.size());
  for (size_t i = 0; i < raw.size(); ++i)
    w.samples[i] = static_cast<float>(raw[i]) / 32768.0f;
  return w;
}

std::pair<int64_t, int> wav_info(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  SCESEP_CHECK(in.is_open(), "wav: cannot open " << path);
  const WavHeader h = parse_header(in, path);
  return {static_cast<int64_t>(h.data_bytes / 2), h.sample_rate};
}

void write_wav(const std::string &path, const Waveform &w) {
  SCESEP_CHECK(w.sample_rate > 0, "wav: sample rate must be positive");
  std::ofstream out(path, std::ios::binary);
  SCESEP_CHECK(out.is_open(), "wav: cannot create " << path);

  const uint32_t data_bytes = static_cast<uint32_t>(w.samples.size() * 2);
  out.write("RIFF", 4);
  write_u32(out, 36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  write_u32(out, 16);
  write_u16(out, 1);  // PCM
  write_u16(out, 1);  // mono
  write_u32(out, static_cast<uint32_t>(w.sample_rate));
  write_u32(out, static_cast<uint32_t>(w.sample_rate * 2));
  write_u16(out, 2);
  write_u16(out, 16);
  out.write("data", 4);
  write_u32(out, data_bytes);

  for (float s : w.samples) {
    const float clamped = std::clamp(s, -1.0f, 32767.0f / 32768.0f);
    const int16_t q =
        static_cast<int16_t>(std::lrintf(clamped * 32768.0f));
    const char b[2] = {static_cast<char>(q & 0xff),
                       static_cast<char>((q >> 8) & 0xff)};
    out.write(b, 2);
  }
  SCESEP_CHECK(out.good(), "wav: write failed for " << path);
}

}  // namespace dsp
}  // namespace scesep
