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

#include "voxdet/render.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace voxdet {
namespace {

std::string Fixed(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3f", v);
  return buffer;
}

struct Frame {
  double x_min, x_max, y_min, y_max, scale;
  // World x to the right, world y up.
  double U(double x) const { return (x - x_min) * scale; }
  double V(double y) const { return (y_max - y) * scale; }
};

}  // namespace

std::string RenderBevSvg(std::span<const Box3D> ground_truth,
                         std::span<const Box3D> detections,
                         const std::optional<AxisLimits>& grid,
                         double pixels_per_meter) {
  Frame f{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(),
          std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(), 1.0};
  const auto extend = [&f](double x, double y) {
    f.x_min = std::min(f.x_min, x);
    f.x_max = std::max(f.x_max, x);
    f.y_min = std::min(f.y_min, y);
    f.y_max = std::max(f.y_max, y);
  };
  if (grid) {
    extend(grid->x_min, grid->y_min);
    extend(grid->x_max, grid->y_max);
  }
  for (auto boxes : {ground_truth, detections}) {
    for (const auto& b : boxes) {
      for (const auto& p : BevPolygon(b)) extend(p.x(), p.y());
    }
  }
  if (f.x_min > f.x_max) {
    f.x_min = f.y_min = -1.0;
    f.x_max = f.y_max = 1.0;
  }
  const double margin = 0.05 * std::max({f.x_max - f.x_min, f.y_max - f.y_min, 1.0});
  f.x_min -= margin;
  f.x_max += margin;
  f.y_min -= margin;
  f.y_max += margin;
  f.scale = pixels_per_meter > 0.0
                ? pixels_per_meter
                : 800.0 / std::max(f.x_max - f.x_min, f.y_max - f.y_min);

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         Fixed(f.U(f.x_max)) + "\" height=\"" + Fixed(f.V(f.y_min)) + "\">\n";
  svg += "<style>.gt{fill:none;stroke:#2a9d36;stroke-width:2}"
         ".det{fill:none;stroke:#d03030;stroke-width:1.5;stroke-dasharray:4 2}"
         ".grid{fill:none;stroke:#888;stroke-width:1}</style>\n";
  if (grid) {
    svg += "<path class=\"grid\" d=\"M" + Fixed(f.U(grid->x_min)) + " " +
           Fixed(f.V(grid->y_min)) + " L" + Fixed(f.U(grid->x_max)) + " " +
           Fixed(f.V(grid->y_min)) + " L" + Fixed(f.U(grid->x_max)) + " " +
           Fixed(f.V(grid->y_max)) + " L" + Fixed(f.U(grid->x_min)) + " " +
           Fixed(f.V(grid->y_max)) + " Z\"/>\n";
  }
  const auto draw = [&](const Box3D& b, const char* cls) {
    svg += "<polygon class=\"";
    svg += cls;
    svg += "\" points=\"";
    const auto polygon = BevPolygon(b);
    for (size_t i = 0; i < polygon.size(); ++i) {
      if (i) svg += ' ';
      svg += Fixed(f.U(polygon[i].x())) + "," + Fixed(f.V(polygon[i].y()));
    }
    svg += "\"/>\n";
    const double hx = b.x + 0.5 * b.l * std::cos(b.theta);
    const double hy = b.y + 0.5 * b.l * std::sin(b.theta);
    svg += "<line class=\"";
    svg += cls;
    svg += "\" x1=\"" + Fixed(f.U(b.x)) + "\" y1=\"" + Fixed(f.V(b.y)) +
           "\" x2=\"" + Fixed(f.U(hx)) + "\" y2=\"" + Fixed(f.V(hy)) + "\"/>\n";
  };
  for (const auto& b : ground_truth) draw(b, "gt");
  for (const auto& b : detections) draw(b, "det");
  svg += "</svg>\n";
  return svg;
}

}  // namespace voxdet
