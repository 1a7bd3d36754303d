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

#ifndef VOXDET_KITTI_H_
#define VOXDET_KITTI_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voxdet/eval.h"
#include "voxdet/geometry.h"

namespace voxdet {

// Object-benchmark calibration. Matrices are row-major.
struct KittiCalib {
  std::array<double, 12> p2{};
  std::array<double, 9> r0_rect = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  std::array<double, 12> tr_velo_to_cam = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0};

  // K is the upper-left 3x3 of P2 (skew ignored).
  CameraIntrinsics Intrinsics() const;
  // World-to-camera-2 transform. The world frame is the rectified reference
  // camera frame re-axed to x forward, y left, z up; P2's fourth column
  // becomes the translation K^-1 * p2[:, 3].
  CameraExtrinsics Extrinsics() const;
};

// Parses "KEY: v0 v1 ..." lines. P2 is required; R0_rect and Tr_velo_to_cam
// default to identity. Other keys are ignored, but P0-P3, R0_rect and the Tr_*
// keys must have the right number of values. Throws ParseError.
KittiCalib ParseKittiCalib(std::string_view text);
// Shortest round-trip formatting of P2, R0_rect and Tr_velo_to_cam.
std::string SerializeKittiCalib(const KittiCalib& calib);

struct KittiLabel {
  std::string type;
  double truncation = 0.0;
  int occlusion = 0;
  double alpha = 0.0;
  std::array<double, 4> bbox{};  // left, top, right, bottom (px)
  double h = 0.0;
  double w = 0.0;
  double l = 0.0;
  std::array<double, 3> location{};  // camera frame, bottom center
  double rotation_y = 0.0;
  std::optional<double> score;

  bool IsDontCare() const { return type == "DontCare"; }
};

// One label per non-empty line, 15 fields (16 with a score). Throws
// ParseError with the line number.
std::vector<KittiLabel> ParseKittiLabels(std::string_view text);
std::string SerializeKittiLabels(const std::vector<KittiLabel>& labels);

// Camera (x right, y down, z forward; bottom-center) to world (x forward,
// y left, z up; geometric center):
//   x = z_cam, y = -x_cam, z = h / 2 - y_cam, theta = -rotation_y - pi / 2.
// Labels are already expressed in the rectified reference frame, so the
// calibration is only validated here.
Box3D KittiToBox3D(const KittiLabel& label, const KittiCalib& calib);

// Inverse of KittiToBox3D for the geometric fields; other fields are left at
// their defaults except `type`.
KittiLabel Box3DToKitti(const Box3D& box, const std::string& type = "Car");

// Ground-truth object with difficulty from the 2D box height, occlusion and
// truncation. DontCare rows and objects too hard for any level are ignored.
GroundTruthObject KittiToGroundTruth(const KittiLabel& label,
                                     const KittiCalib& calib, int class_id);

}  // namespace voxdet

#endif  // VOXDET_KITTI_H_
