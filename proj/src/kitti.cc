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

#include "voxdet/kitti.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "Eigen/Dense"
#include "text_util.h"
#include "voxdet/error.h"

namespace voxdet {
namespace {

using internal::FormatDouble;
using internal::ParseDouble;

Eigen::Matrix3d LeftBlock(const std::array<double, 12>& p) {
  Eigen::Matrix3d k;
  k << p[0], p[1], p[2], p[4], p[5], p[6], p[8], p[9], p[10];
  return k;
}

// Values per calibration key that the parser checks.
const std::map<std::string, size_t, std::less<>>& KnownArity() {
  static const std::map<std::string, size_t, std::less<>> kArity = {
      {"P0", 12},      {"P1", 12},
      {"P2", 12},      {"P3", 12},
      {"R0_rect", 9},  {"R_rect", 9},
      {"Tr_velo_to_cam", 12}, {"Tr_velo_cam", 12},
      {"Tr_imu_to_velo", 12}, {"Tr_imu_velo", 12},
      {"Tr_cam_to_road", 12},
  };
  return kArity;
}

template <size_t N>
void AppendRow(std::string& out, const char* key, const std::array<double, N>& v) {
  out += key;
  out += ':';
  for (double x : v) {
    out += ' ';
    out += FormatDouble(x);
  }
  out += '\n';
}

}  // namespace

CameraIntrinsics KittiCalib::Intrinsics() const {
  CameraIntrinsics k;
  k.fx = p2[0];
  k.cx = p2[2];
  k.fy = p2[5];
  k.cy = p2[6];
  return k;
}

CameraExtrinsics KittiCalib::Extrinsics() const {
  const Eigen::Matrix3d k = LeftBlock(p2);
  const Eigen::Vector3d column(p2[3], p2[7], p2[11]);
  CameraExtrinsics e;
  // World (x fwd, y left, z up) -> camera (x right, y down, z fwd).
  e.rotation << 0, -1, 0, 0, 0, -1, 1, 0, 0;
  e.translation = k.partialPivLu().solve(column);
  return e;
}

KittiCalib ParseKittiCalib(std::string_view text) {
  KittiCalib calib;
  bool has_p2 = false;
  const auto lines = internal::SplitLines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    const std::string_view line = internal::Trim(lines[i]);
    if (line.empty()) continue;
    const size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(line_no, "", "expected 'KEY: values'");
    }
    const std::string key(internal::Trim(line.substr(0, colon)));
    const auto tokens = internal::SplitWhitespace(line.substr(colon + 1));
    const auto known = KnownArity().find(key);
    if (known == KnownArity().end()) continue;
    if (tokens.size() != known->second) {
      throw ParseError(line_no, key,
                       "expected " + std::to_string(known->second) +
                           " values, found " + std::to_string(tokens.size()));
    }
    std::vector<double> values;
    for (size_t t = 0; t < tokens.size(); ++t) {
      values.push_back(ParseDouble(tokens[t], line_no, key + "[" + std::to_string(t) + "]"));
    }
    if (key == "P2") {
      std::copy(values.begin(), values.end(), calib.p2.begin());
      has_p2 = true;
    } else if (key == "R0_rect" || key == "R_rect") {
      std::copy(values.begin(), values.end(), calib.r0_rect.begin());
    } else if (key == "Tr_velo_to_cam" || key == "Tr_velo_cam") {
      std::copy(values.begin(), values.end(), calib.tr_velo_to_cam.begin());
    }
  }
  if (!has_p2) throw ParseError(0, "P2", "missing required key");
  const double det = LeftBlock(calib.p2).determinant();
  if (!std::isfinite(det) || std::abs(det) < 1e-12) {
    throw ParseError(0, "P2", "left 3x3 block is not invertible");
  }
  return calib;
}

std::string SerializeKittiCalib(const KittiCalib& calib) {
  std::string out;
  AppendRow(out, "P2", calib.p2);
  AppendRow(out, "R0_rect", calib.r0_rect);
  AppendRow(out, "Tr_velo_to_cam", calib.tr_velo_to_cam);
  return out;
}

std::vector<KittiLabel> ParseKittiLabels(std::string_view text) {
  static const char* kFields[] = {
      "type",  "truncated", "occluded", "alpha", "bbox_left", "bbox_top",
      "bbox_right", "bbox_bottom", "height", "width", "length", "x", "y", "z",
      "rotation_y", "score"};
  std::vector<KittiLabel> labels;
  const auto lines = internal::SplitLines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    const auto tokens = internal::SplitWhitespace(lines[i]);
    if (tokens.empty()) continue;
    if (tokens.size() != 15 && tokens.size() != 16) {
      throw ParseError(line_no, "", "expected 15 or 16 fields, found " +
                                        std::to_string(tokens.size()));
    }
    const auto num = [&](size_t k) { return ParseDouble(tokens[k], line_no, kFields[k]); };
    KittiLabel label;
    label.type = std::string(tokens[0]);
    label.truncation = num(1);
    label.occlusion = internal::ParseInt(tokens[2], line_no, kFields[2]);
    label.alpha = num(3);
    for (int k = 0; k < 4; ++k) label.bbox[k] = num(4 + k);
    label.h = num(8);
    label.w = num(9);
    label.l = num(10);
    for (int k = 0; k < 3; ++k) label.location[k] = num(11 + k);
    label.rotation_y = num(14);
    if (tokens.size() == 16) label.score = num(15);
    if (label.occlusion < -1 || label.occlusion > 3) {
      throw ParseError(line_no, kFields[2], "occlusion must be in {-1, 0, 1, 2, 3}");
    }
    if (!label.IsDontCare() && !(label.h > 0.0 && label.w > 0.0 && label.l > 0.0)) {
      throw ParseError(line_no, "dimensions", "object extents must be positive");
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

std::string SerializeKittiLabels(const std::vector<KittiLabel>& labels) {
  std::string out;
  for (const auto& label : labels) {
    out += label.type;
    const auto put = [&out](double v) {
      out += ' ';
      out += FormatDouble(v);
    };
    put(label.truncation);
    out += ' ' + std::to_string(label.occlusion);
    put(label.alpha);
    for (double v : label.bbox) put(v);
    put(label.h);
    put(label.w);
    put(label.l);
    for (double v : label.location) put(v);
    put(label.rotation_y);
    if (label.score) put(*label.score);
    out += '\n';
  }
  return out;
}

Box3D KittiToBox3D(const KittiLabel& label, const KittiCalib& calib) {
  calib.Intrinsics().Validate();
  const auto& loc = label.location;
  return Box3D(loc[2], -loc[0], 0.5 * label.h - loc[1], label.w, label.h,
               label.l, -label.rotation_y - 0.5 * std::numbers::pi);
}

KittiLabel Box3DToKitti(const Box3D& box, const std::string& type) {
  KittiLabel label;
  label.type = type;
  label.h = box.h;
  label.w = box.w;
  label.l = box.l;
  label.location = {-box.y, 0.5 * box.h - box.z, box.x};
  label.rotation_y = NormalizeAngle(-box.theta - 0.5 * std::numbers::pi);
  return label;
}

GroundTruthObject KittiToGroundTruth(const KittiLabel& label,
                                     const KittiCalib& calib, int class_id) {
  GroundTruthObject gt;
  gt.class_id = class_id;
  if (label.IsDontCare()) {
    // Sentinel extents; keep the box well-formed but never evaluated.
    KittiLabel placeholder = label;
    placeholder.h = std::max(std::abs(label.h), 1e-3);
    placeholder.w = std::max(std::abs(label.w), 1e-3);
    placeholder.l = std::max(std::abs(label.l), 1e-3);
    gt.box = KittiToBox3D(placeholder, calib);
    gt.ignore = true;
    return gt;
  }
  gt.box = KittiToBox3D(label, calib);
  gt.difficulty = KittiDifficulty(label.bbox[3] - label.bbox[1], label.occlusion,
                                  label.truncation);
  gt.ignore = !gt.difficulty.has_value();
  return gt;
}

}  // namespace voxdet
