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

#include "voxdet/geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "voxdet/error.h"

namespace voxdet {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool AllFinite(std::initializer_list<double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

double Cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

Polygon2D CounterClockwise(const Polygon2D& polygon) {
  if (SignedArea(polygon) >= 0.0) return polygon;
  return Polygon2D(polygon.rbegin(), polygon.rend());
}

}  // namespace

double NormalizeAngle(double angle) {
  double r = std::remainder(angle, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

void CameraIntrinsics::Validate() const {
  if (!AllFinite({fx, fy, cx, cy})) {
    throw ValidationError("camera intrinsics must be finite");
  }
  if (fx <= 0.0 || fy <= 0.0) {
    throw ValidationError("focal lengths must be positive");
  }
}

void CameraExtrinsics::Validate() const {
  if (!rotation.allFinite() || !translation.allFinite()) {
    throw ValidationError("camera extrinsics must be finite");
  }
  const double orthogonality =
      (rotation * rotation.transpose() - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (orthogonality > 1e-6) {
    throw ValidationError("extrinsic rotation is not orthonormal (error " +
                          std::to_string(orthogonality) + ")");
  }
  if (std::abs(rotation.determinant() - 1.0) > 1e-6) {
    throw ValidationError("extrinsic rotation must have determinant +1");
  }
}

FeatureProjection ProjectPoint(const CameraIntrinsics& intrinsics,
                               const CameraExtrinsics& extrinsics,
                               const Vec3& point, int stride) {
  const Mat3& r = extrinsics.rotation;
  const Vec3& t = extrinsics.translation;
  const double xc =
      r(0, 0) * point.x() + r(0, 1) * point.y() + r(0, 2) * point.z() + t.x();
  const double yc =
      r(1, 0) * point.x() + r(1, 1) * point.y() + r(1, 2) * point.z() + t.y();
  const double zc =
      r(2, 0) * point.x() + r(2, 1) * point.y() + r(2, 2) * point.z() + t.z();
  if (zc == 0.0) return {};
  const double u = (intrinsics.fx * xc + intrinsics.cx * zc) / zc;
  const double v = (intrinsics.fy * yc + intrinsics.cy * zc) / zc;
  const double scale = static_cast<double>(stride);
  return {u / scale, v / scale, zc};
}

Box3D::Box3D(double x, double y, double z, double w, double h, double l,
             double theta)
    : x(x), y(y), z(z), w(w), h(h), l(l), theta(NormalizeAngle(theta)) {}

void Box3D::Validate() const {
  if (!AllFinite({x, y, z, w, h, l, theta})) {
    throw ValidationError("box fields must be finite");
  }
  if (w <= 0.0 || h <= 0.0 || l <= 0.0) {
    throw ValidationError("box extents must be positive");
  }
}

std::array<Vec3, 8> BoxCorners(const Box3D& box) {
  static constexpr double kSigns[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
  const double c = std::cos(box.theta);
  const double s = std::sin(box.theta);
  std::array<Vec3, 8> corners;
  for (int i = 0; i < 4; ++i) {
    const double dl = 0.5 * box.l * kSigns[i][0];
    const double dw = 0.5 * box.w * kSigns[i][1];
    const double px = box.x + c * dl - s * dw;
    const double py = box.y + s * dl + c * dw;
    corners[i] = Vec3(px, py, box.z_min());
    corners[i + 4] = Vec3(px, py, box.z_max());
  }
  return corners;
}

Polygon2D BevPolygon(const Box3D& box) {
  const auto corners = BoxCorners(box);
  Polygon2D polygon;
  polygon.reserve(4);
  for (int i = 0; i < 4; ++i) polygon.emplace_back(corners[i].x(), corners[i].y());
  return polygon;
}

double SignedArea(const Polygon2D& polygon) {
  const size_t n = polygon.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (size_t i = 0; i < n; ++i) {
    twice += Cross(polygon[i], polygon[(i + 1) % n]);
  }
  return 0.5 * twice;
}

Polygon2D ClipConvex(const Polygon2D& subject, const Polygon2D& clip) {
  if (subject.size() < 3 || clip.size() < 3) return {};
  Polygon2D output = CounterClockwise(subject);
  const Polygon2D edges = CounterClockwise(clip);
  Polygon2D input;
  for (size_t e = 0; e < edges.size() && !output.empty(); ++e) {
    const Vec2& a = edges[e];
    const Vec2 dir = edges[(e + 1) % edges.size()] - a;
    input.swap(output);
    output.clear();
    const size_t n = input.size();
    for (size_t i = 0; i < n; ++i) {
      const Vec2& p = input[i];
      const Vec2& q = input[(i + 1) % n];
      // Signed distances (scaled by |dir|); >= 0 is inside.
      const double dp = Cross(dir, p - a);
      const double dq = Cross(dir, q - a);
      if (dp >= 0.0) output.push_back(p);
      if ((dp > 0.0 && dq < 0.0) || (dp < 0.0 && dq > 0.0)) {
        const double t = dp / (dp - dq);
        output.push_back(p + t * (q - p));
      }
    }
  }
  if (output.size() < 3 || SignedArea(output) <= 0.0) return {};
  return output;
}

double ConvexIntersectionArea(const Polygon2D& a, const Polygon2D& b) {
  return std::max(0.0, SignedArea(ClipConvex(a, b)));
}

namespace {

// Upper bound on center-to-corner distance in the ground plane.
double BevRadius(const Box3D& box) { return 0.5 * std::hypot(box.w, box.l); }

bool FootprintsMayOverlap(const Box3D& a, const Box3D& b) {
  const double reach = BevRadius(a) + BevRadius(b);
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy < reach * reach;
}

double FootprintIntersection(const Box3D& a, const Box3D& b) {
  if (!FootprintsMayOverlap(a, b)) return 0.0;
  return ConvexIntersectionArea(BevPolygon(a), BevPolygon(b));
}

}  // namespace

double IouBev(const Box3D& a, const Box3D& b) {
  const double inter = FootprintIntersection(a, b);
  if (inter <= 0.0) return 0.0;
  const double uni = a.w * a.l + b.w * b.l - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double Iou3d(const Box3D& a, const Box3D& b) {
  const double z_overlap =
      std::min(a.z_max(), b.z_max()) - std::max(a.z_min(), b.z_min());
  if (z_overlap <= 0.0) return 0.0;
  const double area = FootprintIntersection(a, b);
  if (area <= 0.0) return 0.0;
  const double inter = area * z_overlap;
  const double uni = a.volume() + b.volume() - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

}  // namespace voxdet
