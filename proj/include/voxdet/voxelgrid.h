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

#ifndef VOXDET_VOXELGRID_H_
#define VOXDET_VOXELGRID_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "voxdet/geometry.h"

namespace voxdet {

struct AxisLimits {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
  double z_min = 0.0;
  double z_max = 0.0;

  bool operator==(const AxisLimits&) const = default;
};

// Voxel counts per axis such that count * voxel_size equals the axis range.
// Throws ValidationError if a range is not ordered, voxel_size <= 0, or a
// range is not an integer multiple of voxel_size (tolerance 1e-6 * size).
std::array<int, 3> DeriveCounts(const AxisLimits& limits, double voxel_size);

struct VoxelGridSpec {
  AxisLimits limits;
  double voxel_size = 1.0;
  int nx = 1;
  int ny = 1;
  int nz = 1;

  // Builds a spec whose counts come from DeriveCounts().
  static VoxelGridSpec FromLimits(const AxisLimits& limits, double voxel_size);

  int64_t num_voxels() const { return int64_t{nx} * ny * nz; }
  // Voxel order is ix fastest, then iy, then iz.
  int64_t VoxelIndex(int ix, int iy, int iz) const {
    return ix + int64_t{nx} * (iy + int64_t{ny} * iz);
  }
  bool Contains(int ix, int iy, int iz) const {
    return ix >= 0 && ix < nx && iy >= 0 && iy < ny && iz >= 0 && iz < nz;
  }

  void Validate() const;
  bool operator==(const VoxelGridSpec&) const = default;
};

// World-space center of voxel (ix, iy, iz). Throws ValidationError for
// out-of-range indices.
Vec3 VoxelCenter(const VoxelGridSpec& spec, int ix, int iy, int iz);

// Dense 2D feature map, row-major with channels innermost:
// data[(v * width + u) * channels + c].
struct FeatureMap2D {
  int width = 0;
  int height = 0;
  int channels = 0;
  int stride = 4;
  std::vector<float> data;

  std::span<const float> Cell(int u, int v) const {
    return {data.data() + (int64_t{v} * width + u) * channels,
            static_cast<size_t>(channels)};
  }

  void Validate() const;
};

struct CameraView {
  CameraIntrinsics intrinsics;
  CameraExtrinsics extrinsics;
  FeatureMap2D features;

  void Validate() const;
};

// Dense voxel volume. data is voxel-major, channel-minor:
// data[VoxelIndex(ix, iy, iz) * channels + c]. mask holds per-voxel view
// counts: 0/1 for a single projected view, the number of contributing views
// after aggregation. Voxels with mask 0 carry all-zero features.
struct VoxelVolume {
  VoxelGridSpec spec;
  int channels = 0;
  std::vector<float> data;
  std::vector<uint32_t> mask;

  static VoxelVolume Zeros(const VoxelGridSpec& spec, int channels);

  std::span<const float> Features(int64_t voxel) const {
    return {data.data() + voxel * channels, static_cast<size_t>(channels)};
  }

  void Validate() const;
};

// Feature sampling mode for ProjectView. Only nearest-cell sampling keeps the
// frustum mask exactly reproducible; bilinear is offered for experiments.
enum class Sampling { kNearest, kBilinear };

// Projects one view's feature map into the grid. A voxel is valid iff its
// center has positive depth and lands inside the feature map; valid voxels
// receive the features of cell (floor(u), floor(v)).
VoxelVolume ProjectView(const CameraView& view, const VoxelGridSpec& spec,
                        Sampling sampling = Sampling::kNearest);

// Projects every view, using up to `num_threads` worker threads. Output order
// matches input order.
std::vector<VoxelVolume> ProjectViews(std::span<const CameraView> views,
                                      const VoxelGridSpec& spec,
                                      int num_threads = 1,
                                      Sampling sampling = Sampling::kNearest);

// Averages per-view volumes over the views that see each voxel. The output
// mask stores the raw contributing-view count; voxels seen by no view are 0.
// The result does not depend on the order of `volumes`, bit for bit.
VoxelVolume Aggregate(std::span<const VoxelVolume> volumes);

}  // namespace voxdet

#endif  // VOXDET_VOXELGRID_H_
