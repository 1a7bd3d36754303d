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

#include "voxdet/stub_features.h"

#include <random>

#include "voxdet/error.h"

namespace voxdet {

std::string PatternName(StubPattern pattern) {
  switch (pattern) {
    case StubPattern::kSeededRandom:
      return "seeded-random";
    case StubPattern::kCoordinate:
      return "coordinate";
    case StubPattern::kOneHot:
      return "one-hot";
  }
  return "coordinate";
}

StubPattern ParsePattern(const std::string& name) {
  if (name == "seeded-random") return StubPattern::kSeededRandom;
  if (name == "coordinate") return StubPattern::kCoordinate;
  if (name == "one-hot") return StubPattern::kOneHot;
  throw ValidationError("unknown stub pattern '" + name + "'");
}

FeatureMap2D MakeFeatures(const StubSpec& spec, int width, int height,
                          int stride) {
  if (width < 1 || height < 1 || stride < 1 || spec.channels < 1) {
    throw ValidationError("stub feature dimensions must be >= 1");
  }
  FeatureMap2D map;
  map.width = width;
  map.height = height;
  map.channels = spec.channels;
  map.stride = stride;
  map.data.assign(static_cast<size_t>(width) * height * spec.channels, 0.0f);
  switch (spec.pattern) {
    case StubPattern::kSeededRandom: {
      std::mt19937_64 engine(spec.seed);
      for (float& value : map.data) {
        value = static_cast<float>(engine() >> 40) * 0x1.0p-24f;
      }
      break;
    }
    case StubPattern::kCoordinate:
      for (int v = 0; v < height; ++v) {
        for (int u = 0; u < width; ++u) {
          float* cell = map.data.data() + (static_cast<size_t>(v) * width + u) * spec.channels;
          for (int c = 0; c < spec.channels; ++c) {
            cell[c] = c == 0   ? static_cast<float>(u)
                      : c == 1 ? static_cast<float>(v)
                               : static_cast<float>(v * width + u);
          }
        }
      }
      break;
    case StubPattern::kOneHot: {
      const size_t cells = static_cast<size_t>(width) * height;
      for (size_t c = 0; c < static_cast<size_t>(spec.channels) && c < cells; ++c) {
        map.data[c * spec.channels + c] = 1.0f;
      }
      break;
    }
  }
  return map;
}

std::array<VolumeShape, 3> CheckMultiscaleShapes(const VoxelGridSpec& spec,
                                                 int c2) {
  if (c2 < 1) throw ValidationError("c2 must be >= 1");
  if (spec.nx % 4 != 0 || spec.ny % 4 != 0 || spec.nz % 4 != 0) {
    throw ValidationError("grid " + std::to_string(spec.nx) + "x" +
                          std::to_string(spec.ny) + "x" +
                          std::to_string(spec.nz) + " is not divisible by 4");
  }
  std::array<VolumeShape, 3> shapes;
  for (int level = 0; level < 3; ++level) {
    const int div = 4 >> level;
    shapes[level] = {spec.nx / div, spec.ny / div, spec.nz / div, c2};
  }
  return shapes;
}

}  // namespace voxdet
