// scesep/cli/checkpoint.cc

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

#include "scesep/cli/checkpoint.h"

#include <cstring>
#include <fstream>
#include <sstream>

#include "scesep/base/error.h"

namespace scesep {
namespace cli {

namespace {

static_assert(sizeof(float) == 4, "float32 payloads assume 4-byte floats");

void write_u64(std::ostream &out, uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

uint64_t read_u64(std::istream &in, const std::string &path) {
  unsigned char b[8];
  in.read(reinterpret_cast<char *>(b), 8);
  SCESEP_CHECK(in.good(), "checkpoint: truncated file " << path);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
  return v;
}

struct TensorEntry {
  std::string name;
  ag::Shape shape;
  uint64_t offset = 0;
  uint64_t bytes = 0;
};

}  // namespace

const ag::Tensor *Checkpoint::find(const std::string &name) const {
  for (const auto &kv : tensors)
    if (kv.first == name) return &kv.second;
  return nullptr;
}

void save_checkpoint(const std::string &path, const sce::SceModel &model,
                     const corpus::SpeakerRegistry &registry,
                     const RunConfig &config, int64_t step,
                     const nn::Adam *adam) {
  std::vector<std::pair<std::string, ag::Tensor>> params =
      model.named_parameters();
  std::vector<std::pair<std::string, const float *>> blobs;
  std::vector<std::pair<std::string, ag::Shape>> shapes;

  for (const auto &kv : params) {
    blobs.emplace_back(kv.first, kv.second.data());
    shapes.emplace_back(kv.first, kv.second.shape());
  }
  if (adam) {
    SCESEP_CHECK(adam->num_params() == params.size(),
                 "checkpoint: optimizer tracks " << adam->num_params()
                                                 << " parameters, model has "
                                                 << params.size());
    for (size_t i = 0; i < params.size(); ++i) {
      blobs.emplace_back("adam.m." + params[i].first,
                         adam->moment1(i).data());
      shapes.emplace_back("adam.m." + params[i].first,
                          params[i].second.shape());
      blobs.emplace_back("adam.v." + params[i].first,
                         adam->moment2(i).data());
      shapes.emplace_back("adam.v." + params[i].first,
                          params[i].second.shape());
    }
  }

  std::ostringstream header;
  header << "[checkpoint]\n";
  header << "version = " << kCheckpointVersion << "\n";
  header << "step = " << step << "\n";
  header << "adam_steps = " << (adam ? adam->step_count() : 0) << "\n";

  header << "\n[config]\n";
  for (const auto &kv : config.flat_items())
    header << kv.first << " = " << kv.second << "\n";

  header << "\n[registry]\n";
  header << "count = " << registry.count() << "\n";
  for (int i = 0; i < registry.count(); ++i)
    header << "speaker." << i << " = " << registry.by_index(i).id << " "
           << registry.by_index(i).gender << "\n";

  header << "\n[tensors]\n";
  header << "count = " << blobs.size() << "\n";
  uint64_t offset = 0;
  for (size_t i = 0; i < blobs.size(); ++i) {
    const ag::Shape &shape = shapes[i].second;
    const uint64_t bytes = ag::shape_numel(shape) * sizeof(float);
    header << "tensor." << i << " = " << blobs[i].first << " " << shape.size();
    for (int64_t d : shape) header << " " << d;
    header << " " << offset << " " << bytes << "\n";
    offset += bytes;
  }

  const std::string header_text = header.str();
  std::ofstream out(path, std::ios::binary);
  SCESEP_CHECK(out.is_open(), "checkpoint: cannot create " << path);
  out.write(kCheckpointMagic, 8);
  write_u64(out, header_text.size());
  out.write(header_text.data(), header_text.size());
  for (size_t i = 0; i < blobs.size(); ++i)
    out.write(reinterpret_cast<const char *>(blobs[i].second),
              ag::shape_numel(shapes[i].second) * sizeof(float));
  SCESEP_CHECK(out.good(), "checkpoint: write failed for " << path);
}

Checkpoint load_checkpoint(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  SCESEP_CHECK(in.is_open(), "checkpoint: cannot open " << path);

  char magic[8];
  in.read(magic, 8);
  SCESEP_CHECK(in.good() && std::memcmp(magic, kCheckpointMagic, 8) == 0,
               "checkpoint: bad magic in " << path << ", expected 'SCESEP01'");
  const uint64_t header_len = read_u64(in, path);
  std::string header_text(header_len, '\0');
  in.read(header_text.data(), static_cast<std::streamsize>(header_len));
  SCESEP_CHECK(in.gcount() == static_cast<std::streamsize>(header_len),
               "checkpoint: truncated header in " << path);

  Checkpoint ckpt;
  int64_t registry_count = -1, tensor_count = -1;
  std::vector<TensorEntry> dir;

  for (const IniItem &item : parse_ini_text(header_text)) {
    if (item.section == "checkpoint") {
      if (item.key == "version") ckpt.version = std::stoi(item.value);
      else if (item.key == "step") ckpt.step = std::stoll(item.value);
      else if (item.key == "adam_steps")
        ckpt.adam_steps = std::stoll(item.value);
    } else if (item.section == "config") {
      ckpt.config.apply_flat(item.key, item.value);
    } else if (item.section == "registry") {
      if (item.key == "count") {
        registry_count = std::stoll(item.value);
      } else {
        std::istringstream ss(item.value);
        std::string id, gender;
        ss >> id >> gender;
        SCESEP_CHECK(!id.empty() && (gender == "F" || gender == "M"),
                     "checkpoint: bad registry entry '" << item.value << "'");
        ckpt.speaker_ids.push_back(id);
        ckpt.speaker_genders.push_back(gender[0]);
      }
    } else if (item.section == "tensors") {
      if (item.key == "count") {
        tensor_count = std::stoll(item.value);
      } else {
        std::istringstream ss(item.value);
        TensorEntry e;
        size_t rank = 0;
        ss >> e.name >> rank;
        for (size_t d = 0; d < rank; ++d) {
          int64_t dim = 0;
          ss >> dim;
          e.shape.push_back(dim);
        }
        ss >> e.offset >> e.bytes;
        SCESEP_CHECK(!ss.fail(), "checkpoint: bad tensor entry '"
                                     << item.value << "'");
        dir.push_back(std::move(e));
      }
    }
  }
  SCESEP_CHECK(ckpt.version == kCheckpointVersion,
               "checkpoint: unsupported version " << ckpt.version
                                                  << ", expected "
                                                  << kCheckpointVersion);
  SCESEP_CHECK(registry_count ==
                   static_cast<int64_t>(ckpt.speaker_ids.size()),
               "checkpoint: registry count " << registry_count << " != "
                                             << ckpt.speaker_ids.size()
                                             << " entries");
  SCESEP_CHECK(tensor_count == static_cast<int64_t>(dir.size()),
               "checkpoint: tensor count " << tensor_count << " != "
                                           << dir.size() << " entries");

  for (const TensorEntry &e : dir) {
    SCESEP_CHECK(e.bytes ==
                     static_cast<uint64_t>(ag::shape_numel(e.shape)) *
                         sizeof(float),
                 "checkpoint: tensor '" << e.name
                                        << "' byte length does not match its "
                                           "shape");
    std::vector<float> data(e.bytes / sizeof(float));
    in.seekg(static_cast<std::streamoff>(8 + 8 + header_len + e.offset));
    in.read(reinterpret_cast<char *>(data.data()),
            static_cast<std::streamsize>(e.bytes));
    SCESEP_CHECK(in.gcount() == static_cast<std::streamsize>(e.bytes),
                 "checkpoint: truncated payload for tensor '" << e.name
                                                              << "' in "
                                                              << path);
    ckpt.tensors.emplace_back(
        e.name, ag::Tensor::from(e.shape, std::move(data)));
  }
  return ckpt;
}

sce::SceModel model_from_checkpoint(const Checkpoint &ckpt) {
  const int64_t speakers = static_cast<int64_t>(ckpt.speaker_ids.size());
  sce::SceModel model =
      sce::SceModel::init(ckpt.config.model_config(speakers), /*seed=*/0);
  for (auto &kv : model.named_parameters()) {
    const ag::Tensor *src = ckpt.find(kv.first);
    SCESEP_CHECK(src != nullptr,
                 "checkpoint: missing tensor '" << kv.first << "'");
    SCESEP_CHECK(ag::same_shape(src->shape(), kv.second.shape()),
                 "checkpoint: tensor '"
                     << kv.first << "' has shape "
                     << ag::shape_str(src->shape()) << ", model expects "
                     << ag::shape_str(kv.second.shape()));
    std::memcpy(kv.second.data(), src->data(),
                sizeof(float) * src->numel());
  }
  return model;
}

bool restore_adam(const Checkpoint &ckpt, const sce::SceModel &model,
                  nn::Adam *adam) {
  const auto params = model.named_parameters();
  for (size_t i = 0; i < params.size(); ++i) {
    const ag::Tensor *m = ckpt.find("adam.m." + params[i].first);
    const ag::Tensor *v = ckpt.find("adam.v." + params[i].first);
    if (!m || !v) return false;
    adam->restore(i, m->to_vector(), v->to_vector());
  }
  adam->set_step_count(ckpt.adam_steps);
  return true;
}

}  // namespace cli
}  // namespace scesep
