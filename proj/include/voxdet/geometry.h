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

#ifndef VOXDET_GEOMETRY_H_
#define VOXDET_GEOMETRY_H_

#include <array>
#include <vector>

#include "Eigen/Core"
#include "Eigen/Geometry"
#include "Eigen/LU"

namespace voxdet {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Reduces an angle to (-pi, pi].
double NormalizeAngle(double angle);

// Pinhole intrinsics in pixels.
struct CameraIntrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;

  // Throws ValidationError unless fx, fy > 0 and all values are finite.
  void Validate() const;
};

// World-to-camera rigid transform: p_cam = rotation * p_world + translation.
struct CameraExtrinsics {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  // Throws ValidationError unless rotation is orthonormal with det +1
  // (tolerance 1e-6) and everything is finite.
  void Validate() const;
};

struct FeatureProjection {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
};

// Projects a world point into feature-map coordinates of a map downscaled by
// `stride` relative to the image. The returned depth is the signed camera-frame
// z; a point with depth 0 is reported as (0, 0, 0) and callers treat
// depth <= 0 as invalid. Results at stride s are exactly the stride-1
// coordinates divided by s.
FeatureProjection ProjectPoint(const CameraIntrinsics& intrinsics,
                               const CameraExtrinsics& extrinsics,
                               const Vec3& point, int stride);

// Oriented box with the z axis up. Axis convention:
//   l  extent along the heading axis (world +x when theta = 0)
//   w  extent along the local y axis
//   h  extent along z
// (x, y, z) is the geometric center. theta is stored in (-pi, pi].
struct Box3D {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double w = 1.0;
  double h = 1.0;
  double l = 1.0;
  double theta = 0.0;

  Box3D() = default;
  // Normalizes theta; does not validate (see Validate()).
  Box3D(double x, double y, double z, double w, double h, double l,
        double theta);

  Vec3 center() const { return {x, y, z}; }
  double volume() const { return w * h * l; }
  double z_min() const { return z - 0.5 * h; }
  double z_max() const { return z + 0.5 * h; }

  // Throws ValidationError on non-positive extents or non-finite fields.
  void Validate() const;
};

// Convex polygon, counter-clockwise vertex order.
using Polygon2D = std::vector<Vec2>;

// Corner order: indices 0-3 are the bottom face and 4-7 the top face. Within
// a face the local (length, width) signs are (+,+), (-,+), (-,-), (+,-),
// which is counter-clockwise seen from above.
std::array<Vec3, 8> BoxCorners(const Box3D& box);

// Counter-clockwise ground-plane footprint of the box.
Polygon2D BevPolygon(const Box3D& box);

// Shoelace area; positive for counter-clockwise polygons.
double SignedArea(const Polygon2D& polygon);

// Area of the intersection of two convex polygons (either orientation).
// Touching polygons give 0.
double ConvexIntersectionArea(const Polygon2D& a, const Polygon2D& b);

// Intersection of two convex polygons, counter-clockwise. Empty when the
// intersection has no area.
Polygon2D ClipConvex(const Polygon2D& subject, const Polygon2D& clip);

// Rotated IoU over the ground-plane footprints.
double IouBev(const Box3D& a, const Box3D& b);

// Rotated 3D IoU: footprint intersection times z-overlap, divided by the true
// 3D union volume.
double Iou3d(const Box3D& a, const Box3D& b);

}  // namespace voxdet

#endif  // VOXDET_GEOMETRY_H_
