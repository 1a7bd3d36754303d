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

#ifndef VOXDET_STUB_FEATURES_H_
#define VOXDET_STUB_FEATURES_H_

#include <array>
#include <cstdint>
#include <string>

#include "voxdet/voxelgrid.h"

namespace voxdet {

// Deterministic stand-in for a learned 2D backbone.
enum class StubPattern {
  // Uniform [0, 1) values from mt19937_64 raw output (24 high bits per value).
  kSeededRandom,
  // Channel 0 = u, channel 1 = v, channel k >= 2 = v * width + u.
  kCoordinate,
  // Channel c is 1 at the cell with row-major index c and 0 elsewhere, so
  // every cell with index < channels carries a distinct one-hot vector.
  kOneHot,
};

struct StubSpec {
  uint64_t seed = 0;
  int channels = 16;
  StubPattern pattern = StubPattern::kCoordinate;
};

std::string PatternName(StubPattern pattern);
// Throws ValidationError on an unknown name.
StubPattern ParsePattern(const std::string& name);

FeatureMap2D MakeFeatures(const StubSpec& spec, int width, int height,
                          int stride = 4);

struct VolumeShape {
  int nx = 0;
  int ny = 0;
  int nz = 0;
  int channels = 0;

  bool operator==(const VolumeShape&) const = default;
};

// Shapes of the three multi-scale 3D feature tensors: grid / 4, grid / 2 and
// the full grid, each with c2 channels. Throws ValidationError unless the
// counts are divisible by 4.
std::array<VolumeShape, 3> CheckMultiscaleShapes(const VoxelGridSpec& spec,
                                                 int c2);

}  // namespace voxdet

#endif  // VOXDET_STUB_FEATURES_H_
