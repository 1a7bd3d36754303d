/*
 * Copyright 2026 The voxdet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "voxdet/volume_io.h"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "voxdet/error.h"

namespace voxdet {
namespace {

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian platforms are not supported");

template <typename T>
void Put(std::vector<uint8_t>& out, T value) {
  uint8_t bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(std::begin(bytes), std::end(bytes));
  }
  out.insert(out.end(), std::begin(bytes), std::end(bytes));
}

class Reader {
 public:
  explicit Reader(const std::vector<uint8_t>& bytes) : bytes_(bytes) {}

  template <typename T>
  T Get(const char* field) {
    if (bytes_.size() - pos_ < sizeof(T)) {
      throw ParseError(0, field, "volume buffer truncated at byte " +
                                     std::to_string(pos_));
    }
    uint8_t raw[sizeof(T)];
    std::memcpy(raw, bytes_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
      std::reverse(std::begin(raw), std::end(raw));
    }
    pos_ += sizeof(T);
    T value;
    std::memcpy(&value, raw, sizeof(T));
    return value;
  }

  size_t remaining() const { return bytes_.size() - pos_; }

 private:
  const std::vector<uint8_t>& bytes_;
  size_t pos_ = 0;
};

}  // namespace

std::vector<uint8_t> EncodeVolume(const VoxelVolume& volume) {
  const VoxelGridSpec& spec = volume.spec;
  std::vector<uint8_t> out;
  out.reserve(80 + volume.mask.size() * 4 + volume.data.size() * 4);
  Put<uint32_t>(out, kVolumeMagic);
  Put<uint32_t>(out, kVolumeVersion);
  Put<uint32_t>(out, spec.nx);
  Put<uint32_t>(out, spec.ny);
  Put<uint32_t>(out, spec.nz);
  Put<uint32_t>(out, volume.channels);
  for (double limit : {spec.limits.x_min, spec.limits.x_max, spec.limits.y_min,
                       spec.limits.y_max, spec.limits.z_min, spec.limits.z_max}) {
    Put<double>(out, limit);
  }
  Put<double>(out, spec.voxel_size);
  for (uint32_t count : volume.mask) Put<uint32_t>(out, count);
  for (float value : volume.data) Put<float>(out, value);
  return out;
}

VoxelVolume DecodeVolume(const std::vector<uint8_t>& bytes) {
  Reader reader(bytes);
  if (reader.Get<uint32_t>("magic") != kVolumeMagic) {
    throw ParseError(0, "magic", "not a voxel volume file");
  }
  const uint32_t version = reader.Get<uint32_t>("version");
  if (version != kVolumeVersion) {
    throw ParseError(0, "version", "unsupported version " + std::to_string(version));
  }
  VoxelVolume volume;
  volume.spec.nx = static_cast<int>(reader.Get<uint32_t>("nx"));
  volume.spec.ny = static_cast<int>(reader.Get<uint32_t>("ny"));
  volume.spec.nz = static_cast<int>(reader.Get<uint32_t>("nz"));
  volume.channels = static_cast<int>(reader.Get<uint32_t>("channels"));
  AxisLimits& limits = volume.spec.limits;
  limits.x_min = reader.Get<double>("x_min");
  limits.x_max = reader.Get<double>("x_max");
  limits.y_min = reader.Get<double>("y_min");
  limits.y_max = reader.Get<double>("y_max");
  limits.z_min = reader.Get<double>("z_min");
  limits.z_max = reader.Get<double>("z_max");
  volume.spec.voxel_size = reader.Get<double>("voxel_size");
  volume.spec.Validate();
  if (volume.channels < 1) throw ParseError(0, "channels", "must be >= 1");

  const auto n = static_cast<uint64_t>(volume.spec.num_voxels());
  if (n > reader.remaining() / 4 ||
      static_cast<uint64_t>(volume.channels) > reader.remaining() / (4 * n)) {
    throw ParseError(0, "payload", "header counts exceed the payload size");
  }
  const uint64_t expected = n * 4 + n * static_cast<uint64_t>(volume.channels) * 4;
  if (reader.remaining() != expected) {
    throw ParseError(0, "payload", "expected " + std::to_string(expected) +
                                       " payload bytes, found " +
                                       std::to_string(reader.remaining()));
  }
  volume.mask.resize(n);
  for (auto& count : volume.mask) count = reader.Get<uint32_t>("mask");
  volume.data.resize(n * volume.channels);
  for (auto& value : volume.data) value = reader.Get<float>("data");
  volume.Validate();
  return volume;
}

void WriteVolume(const std::string& path, const VoxelVolume& volume) {
  const auto bytes = EncodeVolume(volume);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
  if (!file) throw IoError("failed writing " + path);
}

VoxelVolume ReadVolume(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(file)),
                             std::istreambuf_iterator<char>());
  return DecodeVolume(bytes);
}

}  // namespace voxdet
