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

#ifndef VOXDET_CONFIG_H_
#define VOXDET_CONFIG_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voxdet/codec.h"
#include "voxdet/voxelgrid.h"

namespace voxdet {

struct DatasetConfig {
  std::string name;
  AxisLimits limits;
  double voxel_size = 0.0;
  AnchorPrior anchor;
  std::vector<double> anchor_rotations;
  AnchorThresholds thresholds;
  double nms_threshold = 0.25;
  // Axis-aligned boxes only; yaw is neither predicted nor decoded.
  bool rotation_free = false;
  int feature_stride = 4;
  int feature_channels = 16;

  // Grid spec derived from limits and voxel size.
  VoxelGridSpec Grid() const { return VoxelGridSpec::FromLimits(limits, voxel_size); }
};

// Built-in presets: "kitti", "nuscenes", "sunrgbd", "scannet".
std::optional<DatasetConfig> PresetConfig(std::string_view name);
std::vector<std::string> PresetNames();

// Line-oriented "key = value" text; '#' starts a comment. Required keys:
// name, x_min, x_max, y_min, y_max, z_min, z_max, voxel_size. Throws
// ParseError with the line number on unknown keys, bad values, or grids that
// fail DeriveCounts.
DatasetConfig ParseConfig(std::string_view text);
std::string SerializeConfig(const DatasetConfig& config);

// `preset_or_path` names a preset or a config file.
DatasetConfig LoadConfig(const std::string& preset_or_path);

}  // namespace voxdet

#endif  // VOXDET_CONFIG_H_
