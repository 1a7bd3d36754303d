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

#ifndef VOXDET_VOLUME_IO_H_
#define VOXDET_VOLUME_IO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "voxdet/voxelgrid.h"

namespace voxdet {

// Binary volume container, all fields little-endian:
//
//   offset  size        field
//   0       u32         magic 0x4C565856 (bytes "VXVL")
//   4       u32         version (1)
//   8       u32 x 4     nx, ny, nz, channels
//   24      f64 x 6     x_min, x_max, y_min, y_max, z_min, z_max
//   72      f64         voxel size
//   80      u32 x N     mask counts, N = nx * ny * nz, voxel order
//   80+4N   f32 x N*C   features, voxel-major, channel-minor
//
// Voxel order is ix fastest, then iy, then iz.
inline constexpr uint32_t kVolumeMagic = 0x4C565856u;
inline constexpr uint32_t kVolumeVersion = 1;

std::vector<uint8_t> EncodeVolume(const VoxelVolume& volume);
// Throws ValidationError on a malformed buffer.
VoxelVolume DecodeVolume(const std::vector<uint8_t>& bytes);

void WriteVolume(const std::string& path, const VoxelVolume& volume);
VoxelVolume ReadVolume(const std::string& path);

}  // namespace voxdet

#endif  // VOXDET_VOLUME_IO_H_
