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

#include "voxdet/codec.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "voxdet/error.h"

namespace voxdet {

double Anchor::Diagonal() const { return std::sqrt(w * w + l * l); }

std::vector<Anchor> GenerateAnchors(const VoxelGridSpec& spec,
                                    const AnchorPrior& prior,
                                    std::span<const double> rotations) {
  if (!(prior.w > 0.0 && prior.l > 0.0 && prior.h > 0.0)) {
    throw ValidationError("anchor prior extents must be positive");
  }
  std::vector<Anchor> anchors;
  anchors.reserve(static_cast<size_t>(spec.nx) * spec.ny * rotations.size());
  const double s = spec.voxel_size;
  for (int iy = 0; iy < spec.ny; ++iy) {
    for (int ix = 0; ix < spec.nx; ++ix) {
      for (double rotation : rotations) {
        Anchor a;
        a.x = spec.limits.x_min + (ix + 0.5) * s;
        a.y = spec.limits.y_min + (iy + 0.5) * s;
        a.z = prior.z;
        a.w = prior.w;
        a.l = prior.l;
        a.h = prior.h;
        a.theta = NormalizeAngle(rotation);
        anchors.push_back(a);
      }
    }
  }
  return anchors;
}

BoxDelta7 EncodeOutdoor(const Box3D& gt, const Anchor& anchor) {
  gt.Validate();
  anchor.AsBox().Validate();
  const double diagonal = anchor.Diagonal();
  BoxDelta7 d;
  d.dx = (gt.x - anchor.x) / diagonal;
  d.dy = (gt.y - anchor.y) / diagonal;
  d.dz = (gt.z - anchor.z) / diagonal;
  d.dw = std::log(gt.w / anchor.w);
  d.dl = std::log(gt.l / anchor.l);
  d.dh = std::log(gt.h / anchor.h);
  d.dtheta = std::sin(gt.theta - anchor.theta);
  return d;
}

bool DirectionTarget(const Box3D& gt, const Anchor& anchor) {
  const double residual = NormalizeAngle(gt.theta - anchor.theta);
  return residual >= 0.0 && residual < std::numbers::pi;
}

Box3D DecodeOutdoor(const BoxDelta7& delta, const Anchor& anchor,
                    bool dir_positive) {
  for (double v : delta.AsArray()) {
    if (!std::isfinite(v)) throw ValidationError("delta must be finite");
  }
  if (std::abs(delta.dtheta) > 1.0) {
    throw ValidationError("dtheta must lie in [-1, 1]");
  }
  const double diagonal = anchor.Diagonal();
  double residual = std::asin(delta.dtheta);
  // asin yields [-pi/2, pi/2]; its sign decides the half-circle.
  if ((residual >= 0.0) != dir_positive) residual += std::numbers::pi;
  return Box3D(anchor.x + delta.dx * diagonal, anchor.y + delta.dy * diagonal,
               anchor.z + delta.dz * diagonal, anchor.w * std::exp(delta.dw),
               anchor.h * std::exp(delta.dh), anchor.l * std::exp(delta.dl),
               anchor.theta + residual);
}

std::vector<AnchorAssignment> AssignAnchors(std::span<const Anchor> anchors,
                                            std::span<const Box3D> gts,
                                            const AnchorThresholds& thresholds) {
  if (!(0.0 <= thresholds.neg_iou && thresholds.neg_iou <= thresholds.pos_iou &&
        thresholds.pos_iou <= 1.0)) {
    throw ValidationError("anchor thresholds must satisfy 0 <= neg <= pos <= 1");
  }
  const size_t n = anchors.size();
  const size_t m = gts.size();
  std::vector<double> iou(n * m);
  std::vector<AnchorAssignment> out(n);
  for (size_t i = 0; i < n; ++i) {
    const Box3D box = anchors[i].AsBox();
    AnchorAssignment& a = out[i];
    for (size_t g = 0; g < m; ++g) {
      const double value = IouBev(box, gts[g]);
      iou[i * m + g] = value;
      if (value > a.max_iou) {
        a.max_iou = value;
        a.gt_index = static_cast<int>(g);
      }
    }
    if (m > 0 && a.max_iou >= thresholds.pos_iou) {
      a.kind = AnchorAssignment::Kind::kPositive;
    } else if (a.max_iou < thresholds.neg_iou) {
      a.kind = AnchorAssignment::Kind::kNegative;
      a.gt_index = -1;
    } else {
      a.kind = AnchorAssignment::Kind::kIgnored;
      a.gt_index = -1;
    }
  }

  std::vector<bool> forced(n, false);
  for (size_t g = 0; g < m; ++g) {
    double best = 0.0;
    size_t best_anchor = n;
    for (size_t i = 0; i < n; ++i) {
      if (!forced[i] && iou[i * m + g] > best) {
        best = iou[i * m + g];
        best_anchor = i;
      }
    }
    if (best_anchor == n) continue;
    forced[best_anchor] = true;
    out[best_anchor].kind = AnchorAssignment::Kind::kPositive;
    out[best_anchor].gt_index = static_cast<int>(g);
  }
  return out;
}

namespace {

struct LevelGrid {
  int nx, ny, nz;
  double edge;
  size_t offset;  // index of the level's first location
};

std::array<LevelGrid, kNumLevels> LevelGrids(const VoxelGridSpec& spec) {
  if (spec.nx % 4 != 0 || spec.ny % 4 != 0 || spec.nz % 4 != 0) {
    throw ValidationError("multi-scale locations need voxel counts divisible by 4 (got " +
                          std::to_string(spec.nx) + "x" + std::to_string(spec.ny) +
                          "x" + std::to_string(spec.nz) + ")");
  }
  std::array<LevelGrid, kNumLevels> grids;
  size_t offset = 0;
  for (int level = 0; level < kNumLevels; ++level) {
    const int stride = LevelStride(level);
    LevelGrid& g = grids[level];
    g.nx = spec.nx / stride;
    g.ny = spec.ny / stride;
    g.nz = spec.nz / stride;
    g.edge = spec.voxel_size * stride;
    g.offset = offset;
    offset += static_cast<size_t>(g.nx) * g.ny * g.nz;
  }
  return grids;
}

// Box-frame coordinates of a world point.
Vec3 ToBoxFrame(const Box3D& box, const Vec3& point) {
  const double c = std::cos(box.theta);
  const double s = std::sin(box.theta);
  const double dx = point.x() - box.x;
  const double dy = point.y() - box.y;
  return {c * dx + s * dy, -s * dx + c * dy, point.z() - box.z};
}

}  // namespace

std::vector<FcosLocation> FcosLocations(const VoxelGridSpec& spec) {
  const auto grids = LevelGrids(spec);
  std::vector<FcosLocation> locations;
  locations.reserve(grids.back().offset +
                    static_cast<size_t>(spec.nx) * spec.ny * spec.nz);
  for (int level = 0; level < kNumLevels; ++level) {
    const LevelGrid& g = grids[level];
    for (int iz = 0; iz < g.nz; ++iz) {
      for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
          FcosLocation loc;
          loc.x = spec.limits.x_min + (ix + 0.5) * g.edge;
          loc.y = spec.limits.y_min + (iy + 0.5) * g.edge;
          loc.z = spec.limits.z_min + (iz + 0.5) * g.edge;
          loc.level = level;
          loc.ix = ix;
          loc.iy = iy;
          loc.iz = iz;
          locations.push_back(loc);
        }
      }
    }
  }
  return locations;
}

double Centerness3d(const std::array<double, 6>& distances) {
  double product = 1.0;
  for (int axis = 0; axis < 3; ++axis) {
    const double a = distances[2 * axis];
    const double b = distances[2 * axis + 1];
    if (!(a >= 0.0 && b >= 0.0)) {
      throw ValidationError("centerness needs non-negative face distances");
    }
    const double hi = std::max(a, b);
    if (hi == 0.0) return 0.0;
    product *= std::min(a, b) / hi;
  }
  return std::sqrt(product);
}

bool InsideBox(const Box3D& box, const Vec3& point) {
  const Vec3 local = ToBoxFrame(box, point);
  return std::abs(local.x()) <= 0.5 * box.l && std::abs(local.y()) <= 0.5 * box.w &&
         std::abs(local.z()) <= 0.5 * box.h;
}

std::vector<size_t> CenterSampling(const Box3D& gt,
                                   std::span<const FcosLocation> locations,
                                   const VoxelGridSpec& spec, int level) {
  if (level < 0 || level >= kNumLevels) throw ValidationError("invalid level");
  const LevelGrid g = LevelGrids(spec)[level];
  const auto cell = [&](double coord, double lo) {
    return static_cast<int>(std::floor((coord - lo) / g.edge));
  };
  const int cx = cell(gt.x, spec.limits.x_min);
  const int cy = cell(gt.y, spec.limits.y_min);
  const int cz = cell(gt.z, spec.limits.z_min);
  std::vector<size_t> out;
  for (int iz = cz - 1; iz <= cz + 1; ++iz) {
    if (iz < 0 || iz >= g.nz) continue;
    for (int iy = cy - 1; iy <= cy + 1; ++iy) {
      if (iy < 0 || iy >= g.ny) continue;
      for (int ix = cx - 1; ix <= cx + 1; ++ix) {
        if (ix < 0 || ix >= g.nx) continue;
        const size_t index =
            g.offset + ix + static_cast<size_t>(g.nx) * (iy + static_cast<size_t>(g.ny) * iz);
        if (index >= locations.size()) {
          throw ValidationError("locations do not match the grid spec");
        }
        if (InsideBox(gt, locations[index].point())) out.push_back(index);
      }
    }
  }
  return out;
}

FcosTarget EncodeFcos(const Box3D& gt, const FcosLocation& location) {
  const Vec3 local = ToBoxFrame(gt, location.point());
  FcosTarget t;
  t.dx_min = -0.5 * gt.l - local.x();
  t.dx_max = 0.5 * gt.l - local.x();
  t.dy_min = -0.5 * gt.w - local.y();
  t.dy_max = 0.5 * gt.w - local.y();
  t.dz_min = -0.5 * gt.h - local.z();
  t.dz_max = 0.5 * gt.h - local.z();
  t.theta = gt.theta;
  const auto distances = t.FaceDistances();
  const bool inside = std::all_of(distances.begin(), distances.end(),
                                  [](double d) { return d >= 0.0; });
  t.centerness = inside ? Centerness3d(distances) : 0.0;
  return t;
}

Box3D DecodeFcos(const FcosTarget& target, const FcosLocation& location,
                 bool rotation_free) {
  for (double v : {target.dx_min, target.dx_max, target.dy_min, target.dy_max,
                   target.dz_min, target.dz_max, target.theta}) {
    if (!std::isfinite(v)) throw ValidationError("target must be finite");
  }
  const double l = target.dx_max - target.dx_min;
  const double w = target.dy_max - target.dy_min;
  const double h = target.dz_max - target.dz_min;
  if (!(l > 0.0 && w > 0.0 && h > 0.0)) {
    throw ValidationError("decoded box has a non-positive extent");
  }
  const double theta = rotation_free ? 0.0 : target.theta;
  const double lx = 0.5 * (target.dx_min + target.dx_max);
  const double ly = 0.5 * (target.dy_min + target.dy_max);
  const double lz = 0.5 * (target.dz_min + target.dz_max);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return Box3D(location.x + c * lx - s * ly, location.y + s * lx + c * ly,
               location.z + lz, w, h, l, theta);
}

int RouteLevel(const Box3D& gt, double voxel_size) {
  const double half_min = 0.5 * std::min({gt.w, gt.l, gt.h});
  for (int level = 0; level < kNumLevels; ++level) {
    if (voxel_size * LevelStride(level) <= half_min) return level;
  }
  return kNumLevels - 1;
}

std::vector<FcosTarget> AssignFcos(std::span<const LabeledBox> gts,
                                   std::span<const FcosLocation> locations,
                                   const VoxelGridSpec& spec) {
  std::vector<int> owner(locations.size(), -1);
  for (size_t g = 0; g < gts.size(); ++g) {
    const Box3D& box = gts[g].box;
    const int level = RouteLevel(box, spec.voxel_size);
    for (size_t index : CenterSampling(box, locations, spec, level)) {
      const int current = owner[index];
      if (current < 0 || box.volume() < gts[current].box.volume()) {
        owner[index] = static_cast<int>(g);
      }
    }
  }
  std::vector<FcosTarget> targets(locations.size());
  for (size_t i = 0; i < locations.size(); ++i) {
    if (owner[i] < 0) continue;
    const LabeledBox& gt = gts[owner[i]];
    FcosTarget& t = targets[i];
    t = EncodeFcos(gt.box, locations[i]);
    t.class_id = gt.class_id;
    t.gt_index = owner[i];
    t.is_positive = true;
  }
  return targets;
}

}  // namespace voxdet
