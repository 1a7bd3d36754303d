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

#include "voxdet/config.h"

#include <numbers>

#include "gtest/gtest.h"
#include "voxdet/error.h"

namespace voxdet {
namespace {

TEST(PresetTest, LimitsAndCounts) {
  struct Expected {
    const char* name;
    AxisLimits limits;
    double voxel;
    int nx, ny, nz;
  };
  const Expected expected[] = {
      {"kitti", {-39.68, 39.68, 0, 69.12, -2.92, 0.92}, 0.32, 248, 216, 12},
      {"nuscenes", {-49.92, 49.92, -49.92, 49.92, -2.92, 0.92}, 0.32, 312, 312, 12},
      {"sunrgbd", {-3.2, 3.2, 0, 6.4, -2.28, 0.28}, 0.16, 40, 40, 16},
      {"scannet", {-3.2, 3.2, -3.2, 3.2, -1.28, 1.28}, 0.16, 40, 40, 16},
  };
  for (const auto& e : expected) {
    const auto config = PresetConfig(e.name);
    ASSERT_TRUE(config.has_value()) << e.name;
    EXPECT_EQ(config->limits, e.limits) << e.name;
    EXPECT_EQ(config->voxel_size, e.voxel);
    const auto grid = config->Grid();
    EXPECT_EQ(grid.nx, e.nx);
    EXPECT_EQ(grid.ny, e.ny);
    EXPECT_EQ(grid.nz, e.nz);
    EXPECT_NEAR(grid.nx * grid.voxel_size, e.limits.x_max - e.limits.x_min, 1e-9);
    EXPECT_NEAR(grid.ny * grid.voxel_size, e.limits.y_max - e.limits.y_min, 1e-9);
    EXPECT_NEAR(grid.nz * grid.voxel_size, e.limits.z_max - e.limits.z_min, 1e-9);
  }
  EXPECT_FALSE(PresetConfig("waymo").has_value());
  EXPECT_EQ(PresetNames().size(), 4u);
  EXPECT_TRUE(PresetConfig("scannet")->rotation_free);
  EXPECT_FALSE(PresetConfig("sunrgbd")->rotation_free);
}

TEST(PresetTest, DetectorDefaults) {
  const auto kitti = *PresetConfig("kitti");
  EXPECT_EQ(kitti.anchor.w, 1.6);
  EXPECT_EQ(kitti.anchor.l, 3.9);
  EXPECT_EQ(kitti.anchor.h, 1.56);
  EXPECT_EQ(kitti.anchor.z, -1.78);
  EXPECT_EQ(kitti.anchor_rotations, (std::vector<double>{0.0, std::numbers::pi / 2}));
  EXPECT_EQ(kitti.thresholds.pos_iou, 0.6);
  EXPECT_EQ(kitti.thresholds.neg_iou, 0.45);
  EXPECT_EQ(kitti.nms_threshold, 0.1);
  EXPECT_EQ(PresetConfig("scannet")->nms_threshold, 0.25);
}

TEST(ConfigParseTest, RoundTrip) {
  for (const auto& name : PresetNames()) {
    const auto config = *PresetConfig(name);
    const auto back = ParseConfig(SerializeConfig(config));
    EXPECT_EQ(back.name, config.name);
    EXPECT_EQ(back.limits, config.limits);
    EXPECT_EQ(back.voxel_size, config.voxel_size);
    EXPECT_EQ(back.anchor_rotations, config.anchor_rotations);
    EXPECT_EQ(back.nms_threshold, config.nms_threshold);
    EXPECT_EQ(back.rotation_free, config.rotation_free);
    EXPECT_EQ(SerializeConfig(back), SerializeConfig(config));
  }
}

TEST(ConfigParseTest, ErrorsCarryLineAndField) {
  std::string text = SerializeConfig(*PresetConfig("kitti"));
  try {
    ParseConfig(text + "bogus = 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "bogus");
    EXPECT_GT(e.line(), 1);
  }
  EXPECT_THROW(ParseConfig(text + "voxel_size = 0.5\n"), ParseError);
  EXPECT_THROW(ParseConfig("name = x\n"), ParseError);
  const auto pos = text.find("voxel_size");
  std::string bad = text;
  bad.replace(pos, text.find('\n', pos) - pos, "voxel_size = 0.33");
  EXPECT_THROW(ParseConfig(bad), Error);
}

TEST(ConfigLoadTest, UnknownPathIsIoError) {
  EXPECT_THROW(LoadConfig("/nonexistent/config.cfg"), IoError);
}

}  // namespace
}  // namespace voxdet
