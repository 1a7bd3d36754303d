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

#include "gtest/gtest.h"
#include "voxdet/config.h"
#include "voxdet/error.h"

namespace voxdet {
namespace {

TEST(StubFeaturesTest, CoordinatePattern) {
  const auto map = MakeFeatures({0, 3, StubPattern::kCoordinate}, 5, 4);
  ASSERT_EQ(map.data.size(), 5u * 4 * 3);
  const auto cell = map.Cell(3, 2);
  EXPECT_EQ(cell[0], 3.0f);
  EXPECT_EQ(cell[1], 2.0f);
  EXPECT_EQ(cell[2], 13.0f);
}

TEST(StubFeaturesTest, OneHotPattern) {
  const auto map = MakeFeatures({0, 4, StubPattern::kOneHot}, 3, 2);
  for (int v = 0; v < 2; ++v) {
    for (int u = 0; u < 3; ++u) {
      const int index = v * 3 + u;
      const auto cell = map.Cell(u, v);
      for (int c = 0; c < 4; ++c) EXPECT_EQ(cell[c], c == index ? 1.0f : 0.0f);
    }
  }
}

TEST(StubFeaturesTest, SeededRandomIsDeterministic) {
  const auto a = MakeFeatures({42, 8, StubPattern::kSeededRandom}, 6, 5);
  const auto b = MakeFeatures({42, 8, StubPattern::kSeededRandom}, 6, 5);
  const auto c = MakeFeatures({43, 8, StubPattern::kSeededRandom}, 6, 5);
  EXPECT_EQ(a.data, b.data);
  EXPECT_NE(a.data, c.data);
  for (float f : a.data) {
    EXPECT_GE(f, 0.0f);
    EXPECT_LT(f, 1.0f);
  }
}

TEST(StubFeaturesTest, PatternNames) {
  for (auto p : {StubPattern::kSeededRandom, StubPattern::kCoordinate, StubPattern::kOneHot}) {
    EXPECT_EQ(ParsePattern(PatternName(p)), p);
  }
  EXPECT_THROW(ParsePattern("gaussian"), ValidationError);
  EXPECT_THROW(MakeFeatures({0, 0, StubPattern::kCoordinate}, 2, 2), ValidationError);
}

TEST(StubFeaturesTest, MultiscaleShapes) {
  const auto shapes = CheckMultiscaleShapes(PresetConfig("scannet")->Grid(), 64);
  EXPECT_EQ(shapes[0], (VolumeShape{10, 10, 4, 64}));
  EXPECT_EQ(shapes[1], (VolumeShape{20, 20, 8, 64}));
  EXPECT_EQ(shapes[2], (VolumeShape{40, 40, 16, 64}));
  const auto odd = VoxelGridSpec::FromLimits({0, 1.2, 0, 1.6, 0, 0.8}, 0.2);  // 6 x 8 x 4
  EXPECT_THROW(CheckMultiscaleShapes(odd, 64), ValidationError);
}

}  // namespace
}  // namespace voxdet
