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

#ifndef VOXDET_CODEC_H_
#define VOXDET_CODEC_H_

#include <array>
#include <span>
#include <vector>

#include "voxdet/geometry.h"
#include "voxdet/voxelgrid.h"

namespace voxdet {

// ---------------------------------------------------------------------------
// Outdoor head: BEV anchors and 7-tuple deltas.
// ---------------------------------------------------------------------------

struct AnchorPrior {
  double w = 1.6;
  double l = 3.9;
  double h = 1.56;
  double z = -1.78;
};

struct Anchor {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double w = 1.0;
  double l = 1.0;
  double h = 1.0;
  double theta = 0.0;

  Box3D AsBox() const { return Box3D(x, y, z, w, h, l, theta); }
  // Ground-plane diagonal sqrt(w^2 + l^2).
  double Diagonal() const;
};

// One anchor per BEV cell center per rotation, all at prior.z. Order: iy
// outer, ix, rotation inner, i.e. index = (iy * nx + ix) * |rotations| + r.
std::vector<Anchor> GenerateAnchors(const VoxelGridSpec& spec,
                                    const AnchorPrior& prior,
                                    std::span<const double> rotations);

struct BoxDelta7 {
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;
  double dw = 0.0;
  double dl = 0.0;
  double dh = 0.0;
  double dtheta = 0.0;

  std::array<double, 7> AsArray() const { return {dx, dy, dz, dw, dl, dh, dtheta}; }
};

BoxDelta7 EncodeOutdoor(const Box3D& gt, const Anchor& anchor);

// Direction-classifier target: true iff the yaw residual gt - anchor,
// reduced to (-pi, pi], lies in [0, pi).
bool DirectionTarget(const Box3D& gt, const Anchor& anchor);

// Inverts EncodeOutdoor. The yaw residual asin(dtheta) is flipped by pi when
// its half-circle disagrees with `dir_positive`. Throws ValidationError on a
// non-finite delta or |dtheta| > 1.
Box3D DecodeOutdoor(const BoxDelta7& delta, const Anchor& anchor,
                    bool dir_positive);

struct AnchorThresholds {
  double pos_iou = 0.6;
  double neg_iou = 0.45;
};

struct AnchorAssignment {
  enum class Kind { kNegative, kIgnored, kPositive };
  Kind kind = Kind::kNegative;
  int gt_index = -1;  // valid for positives
  double max_iou = 0.0;
};

// Labels every anchor from its best BEV rotated IoU. Each gt additionally
// claims its best-overlapping anchor (if that IoU > 0) as a positive; gts
// are processed in order and skip anchors already claimed this way.
std::vector<AnchorAssignment> AssignAnchors(std::span<const Anchor> anchors,
                                            std::span<const Box3D> gts,
                                            const AnchorThresholds& thresholds);

// ---------------------------------------------------------------------------
// Indoor head: anchor-free multi-scale targets.
// ---------------------------------------------------------------------------

inline constexpr int kNumLevels = 3;

// Level 0 is the coarsest (cell edge 4s), level 2 the finest (edge s).
inline constexpr int LevelStride(int level) { return 4 >> level; }

struct FcosLocation {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  int level = 0;
  // Cell indices within the level grid.
  int ix = 0;
  int iy = 0;
  int iz = 0;

  Vec3 point() const { return {x, y, z}; }
};

// Cell centers of the three levels, level 0 first; within a level ix varies
// fastest. Throws ValidationError unless nx, ny, nz are divisible by 4.
std::vector<FcosLocation> FcosLocations(const VoxelGridSpec& spec);

// Target for one location. Offsets follow the signed plane convention:
// dx_min = x_min(gt) - x(location), dx_max = x_max(gt) - x(location), measured
// in the box's yaw-aligned frame (local x along l, y along w, z along h).
// For a location inside its box, d*_min <= 0 <= d*_max.
struct FcosTarget {
  double dx_min = 0.0;
  double dx_max = 0.0;
  double dy_min = 0.0;
  double dy_max = 0.0;
  double dz_min = 0.0;
  double dz_max = 0.0;
  double theta = 0.0;
  double centerness = 0.0;
  int class_id = -1;
  int gt_index = -1;
  bool is_positive = false;

  // Distances to the six faces: (-dx_min, dx_max, -dy_min, dy_max, -dz_min,
  // dz_max).
  std::array<double, 6> FaceDistances() const {
    return {-dx_min, dx_max, -dy_min, dy_max, -dz_min, dz_max};
  }
};

// sqrt of the product of min/max ratios of the three face-distance pairs
// (x-, x+, y-, y+, z-, z+). 1 at the center, 0 on any face. Throws
// ValidationError on a negative distance.
double Centerness3d(const std::array<double, 6>& distances);

// True iff `point` lies inside the box (faces included).
bool InsideBox(const Box3D& box, const Vec3& point);

// Indices (into `locations`) of the at most 27 locations of `level` forming
// the 3x3x3 cell block around the cell containing the gt center, restricted
// to locations inside the gt box.
std::vector<size_t> CenterSampling(const Box3D& gt,
                                   std::span<const FcosLocation> locations,
                                   const VoxelGridSpec& spec, int level);

FcosTarget EncodeFcos(const Box3D& gt, const FcosLocation& location);

// Inverts EncodeFcos. With `rotation_free` the decoded yaw is forced to 0.
// Throws ValidationError on a non-positive implied extent or non-finite input.
Box3D DecodeFcos(const FcosTarget& target, const FcosLocation& location,
                 bool rotation_free = false);

// Coarsest level whose cell edge is <= min(w, l, h) / 2; the finest level if
// none qualifies.
int RouteLevel(const Box3D& gt, double voxel_size);

struct LabeledBox {
  Box3D box;
  int class_id = 0;
};

// Per-location targets. A location is positive iff it is a center-sampling
// candidate of some gt at that gt's routed level; overlapping claims go to
// the smallest-volume gt (lower index on ties).
std::vector<FcosTarget> AssignFcos(std::span<const LabeledBox> gts,
                                   std::span<const FcosLocation> locations,
                                   const VoxelGridSpec& spec);

}  // namespace voxdet

#endif  // VOXDET_CODEC_H_
