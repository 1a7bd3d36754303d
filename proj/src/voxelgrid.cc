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

#include "voxdet/voxelgrid.h"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <string>

#include "voxdet/error.h"

namespace voxdet {
namespace {

constexpr int kMaxVoxelsPerAxis = 1 << 20;

int CountAlong(double lo, double hi, double voxel_size, const char* axis) {
  if (!(std::isfinite(lo) && std::isfinite(hi)) || !(hi > lo)) {
    throw ValidationError(std::string("axis ") + axis +
                          ": limits must be finite and ordered");
  }
  const double range = hi - lo;
  const double count = std::round(range / voxel_size);
  if (!(count <= kMaxVoxelsPerAxis)) {
    throw ValidationError(std::string("axis ") + axis + ": more than " +
                          std::to_string(kMaxVoxelsPerAxis) + " voxels");
  }
  if (count < 1.0 || std::abs(count * voxel_size - range) > 1e-6 * voxel_size) {
    throw ValidationError(std::string("axis ") + axis + ": range " +
                          std::to_string(range) +
                          " is not an integer multiple of voxel size " +
                          std::to_string(voxel_size));
  }
  return static_cast<int>(count);
}

void SampleNearest(const FeatureMap2D& features, int u, int v, float* out) {
  const auto cell = features.Cell(u, v);
  std::copy(cell.begin(), cell.end(), out);
}

// Bilinear interpolation between cell centers, clamped at the map border.
void SampleBilinear(const FeatureMap2D& features, double u, double v,
                    float* out) {
  const double fu = std::clamp(u - 0.5, 0.0, features.width - 1.0);
  const double fv = std::clamp(v - 0.5, 0.0, features.height - 1.0);
  const int u0 = static_cast<int>(fu);
  const int v0 = static_cast<int>(fv);
  const int u1 = std::min(u0 + 1, features.width - 1);
  const int v1 = std::min(v0 + 1, features.height - 1);
  const double au = fu - u0;
  const double av = fv - v0;
  const auto c00 = features.Cell(u0, v0);
  const auto c10 = features.Cell(u1, v0);
  const auto c01 = features.Cell(u0, v1);
  const auto c11 = features.Cell(u1, v1);
  for (int c = 0; c < features.channels; ++c) {
    out[c] = static_cast<float>((1 - au) * (1 - av) * c00[c] +
                                au * (1 - av) * c10[c] +
                                (1 - au) * av * c01[c] + au * av * c11[c]);
  }
}

// Strict weak order on volume contents, used to fix the summation order.
bool ContentLess(const VoxelVolume& a, const VoxelVolume& b) {
  if (a.mask != b.mask) {
    return std::lexicographical_compare(a.mask.begin(), a.mask.end(),
                                        b.mask.begin(), b.mask.end());
  }
  return std::lexicographical_compare(a.data.begin(), a.data.end(),
                                      b.data.begin(), b.data.end());
}

}  // namespace

std::array<int, 3> DeriveCounts(const AxisLimits& limits, double voxel_size) {
  if (!std::isfinite(voxel_size) || voxel_size <= 0.0) {
    throw ValidationError("voxel size must be positive");
  }
  return {CountAlong(limits.x_min, limits.x_max, voxel_size, "x"),
          CountAlong(limits.y_min, limits.y_max, voxel_size, "y"),
          CountAlong(limits.z_min, limits.z_max, voxel_size, "z")};
}

VoxelGridSpec VoxelGridSpec::FromLimits(const AxisLimits& limits,
                                        double voxel_size) {
  const auto counts = DeriveCounts(limits, voxel_size);
  VoxelGridSpec spec;
  spec.limits = limits;
  spec.voxel_size = voxel_size;
  spec.nx = counts[0];
  spec.ny = counts[1];
  spec.nz = counts[2];
  return spec;
}

void VoxelGridSpec::Validate() const {
  const auto counts = DeriveCounts(limits, voxel_size);
  if (counts[0] != nx || counts[1] != ny || counts[2] != nz) {
    throw ValidationError("voxel counts do not match limits and voxel size");
  }
}

Vec3 VoxelCenter(const VoxelGridSpec& spec, int ix, int iy, int iz) {
  if (!spec.Contains(ix, iy, iz)) {
    throw ValidationError("voxel index (" + std::to_string(ix) + ", " +
                          std::to_string(iy) + ", " + std::to_string(iz) +
                          ") out of bounds");
  }
  const double s = spec.voxel_size;
  return {spec.limits.x_min + (ix + 0.5) * s, spec.limits.y_min + (iy + 0.5) * s,
          spec.limits.z_min + (iz + 0.5) * s};
}

void FeatureMap2D::Validate() const {
  if (width < 1 || height < 1 || channels < 1 || stride < 1) {
    throw ValidationError("feature map dimensions and stride must be >= 1");
  }
  if (data.size() != static_cast<size_t>(width) * height * channels) {
    throw ValidationError("feature map data length " +
                          std::to_string(data.size()) +
                          " != width * height * channels");
  }
  if (!std::all_of(data.begin(), data.end(),
                   [](float f) { return std::isfinite(f); })) {
    throw ValidationError("feature map contains non-finite values");
  }
}

void CameraView::Validate() const {
  intrinsics.Validate();
  extrinsics.Validate();
  features.Validate();
}

VoxelVolume VoxelVolume::Zeros(const VoxelGridSpec& spec, int channels) {
  VoxelVolume volume;
  volume.spec = spec;
  volume.channels = channels;
  volume.data.assign(static_cast<size_t>(spec.num_voxels()) * channels, 0.0f);
  volume.mask.assign(static_cast<size_t>(spec.num_voxels()), 0u);
  return volume;
}

void VoxelVolume::Validate() const {
  spec.Validate();
  if (channels < 1) throw ValidationError("volume channels must be >= 1");
  const auto n = static_cast<size_t>(spec.num_voxels());
  if (mask.size() != n || data.size() != n * channels) {
    throw ValidationError("volume buffers do not match grid dimensions");
  }
  for (size_t i = 0; i < n; ++i) {
    for (int c = 0; c < channels; ++c) {
      const float f = data[i * channels + c];
      if (!std::isfinite(f)) {
        throw ValidationError("volume contains non-finite values");
      }
      if (mask[i] == 0 && f != 0.0f) {
        throw ValidationError("volume has features at an unmasked voxel");
      }
    }
  }
}

VoxelVolume ProjectView(const CameraView& view, const VoxelGridSpec& spec,
                        Sampling sampling) {
  const FeatureMap2D& features = view.features;
  VoxelVolume volume = VoxelVolume::Zeros(spec, features.channels);
  const double width = features.width;
  const double height = features.height;
  for (int iz = 0; iz < spec.nz; ++iz) {
    for (int iy = 0; iy < spec.ny; ++iy) {
      for (int ix = 0; ix < spec.nx; ++ix) {
        const auto p = ProjectPoint(view.intrinsics, view.extrinsics,
                                    VoxelCenter(spec, ix, iy, iz),
                                    features.stride);
        // floor(u) in [0, width) <=> u in [0, width); NaN fails both.
        if (!(p.depth > 0.0 && p.u >= 0.0 && p.u < width && p.v >= 0.0 &&
              p.v < height)) {
          continue;
        }
        const int64_t voxel = spec.VoxelIndex(ix, iy, iz);
        volume.mask[voxel] = 1;
        float* out = volume.data.data() + voxel * features.channels;
        if (sampling == Sampling::kNearest) {
          SampleNearest(features, static_cast<int>(p.u),
                        static_cast<int>(p.v), out);
        } else {
          SampleBilinear(features, p.u, p.v, out);
        }
      }
    }
  }
  return volume;
}

std::vector<VoxelVolume> ProjectViews(std::span<const CameraView> views,
                                      const VoxelGridSpec& spec,
                                      int num_threads, Sampling sampling) {
  std::vector<VoxelVolume> volumes(views.size());
  const size_t workers =
      std::min<size_t>(std::max(num_threads, 1), views.size());
  if (workers <= 1 || views.size() <= 1) {
    for (size_t i = 0; i < views.size(); ++i) {
      volumes[i] = ProjectView(views[i], spec, sampling);
    }
    return volumes;
  }
  std::vector<std::future<void>> tasks;
  for (size_t w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      for (size_t i = w; i < views.size(); i += workers) {
        volumes[i] = ProjectView(views[i], spec, sampling);
      }
    }));
  }
  for (auto& task : tasks) task.get();
  return volumes;
}

VoxelVolume Aggregate(std::span<const VoxelVolume> volumes) {
  if (volumes.empty()) throw ValidationError("aggregate needs at least one volume");
  const VoxelGridSpec& spec = volumes.front().spec;
  const int channels = volumes.front().channels;
  for (const auto& v : volumes) {
    if (!(v.spec == spec) || v.channels != channels) {
      throw ValidationError("aggregate: volumes differ in grid or channels");
    }
    if (v.mask.size() != static_cast<size_t>(spec.num_voxels()) ||
        v.data.size() != v.mask.size() * channels) {
      throw ValidationError("aggregate: malformed volume buffers");
    }
  }

  std::vector<const VoxelVolume*> order;
  order.reserve(volumes.size());
  for (const auto& v : volumes) order.push_back(&v);
  std::stable_sort(order.begin(), order.end(),
                   [](const VoxelVolume* a, const VoxelVolume* b) {
                     return ContentLess(*a, *b);
                   });

  VoxelVolume out = VoxelVolume::Zeros(spec, channels);
  std::vector<double> sum(channels);
  const int64_t n = spec.num_voxels();
  for (int64_t voxel = 0; voxel < n; ++voxel) {
    uint32_t count = 0;
    std::fill(sum.begin(), sum.end(), 0.0);
    for (const VoxelVolume* v : order) {
      if (v->mask[voxel] == 0) continue;
      count += v->mask[voxel];
      const float* in = v->data.data() + voxel * channels;
      for (int c = 0; c < channels; ++c) sum[c] += v->mask[voxel] * double{in[c]};
    }
    out.mask[voxel] = count;
    if (count == 0) continue;
    float* dst = out.data.data() + voxel * channels;
    for (int c = 0; c < channels; ++c) {
      dst[c] = static_cast<float>(sum[c] / count);
    }
  }
  return out;
}

}  // namespace voxdet
