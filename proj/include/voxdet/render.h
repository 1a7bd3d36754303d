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

#ifndef VOXDET_RENDER_H_
#define VOXDET_RENDER_H_

#include <optional>
#include <span>
#include <string>

#include "voxdet/geometry.h"
#include "voxdet/voxelgrid.h"

namespace voxdet {

// Static top-down SVG. Every box becomes exactly one <polygon> with class
// "gt" (ground truth) or "det" (detection) plus a <line> marking its heading.
// The optional grid outline is drawn as a <path>. Output is byte-identical
// for identical input.
std::string RenderBevSvg(std::span<const Box3D> ground_truth,
                         std::span<const Box3D> detections,
                         const std::optional<AxisLimits>& grid = std::nullopt,
                         double pixels_per_meter = 0.0);

}  // namespace voxdet

#endif  // VOXDET_RENDER_H_
