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

#include "voxdet/suppression.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "voxdet/error.h"

namespace voxdet {

void Detection::Validate() const {
  box.Validate();
  if (!(score >= 0.0 && score <= 1.0)) {
    throw ValidationError("detection score must lie in [0, 1]");
  }
}

std::vector<size_t> ScoreOrder(std::span<const Detection> detections) {
  std::vector<size_t> order(detections.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return detections[a].score > detections[b].score;
  });
  return order;
}

std::vector<size_t> RotatedNms(std::span<const Detection> detections,
                               double iou_threshold) {
  if (!(iou_threshold >= 0.0 && iou_threshold <= 1.0)) {
    throw ValidationError("NMS threshold must lie in [0, 1]");
  }
  for (const auto& d : detections) d.Validate();

  std::vector<size_t> kept;
  for (size_t index : ScoreOrder(detections)) {
    const Detection& candidate = detections[index];
    const bool suppressed =
        std::any_of(kept.begin(), kept.end(), [&](size_t k) {
          if (detections[k].class_id != candidate.class_id) return false;
          const double iou = IouBev(detections[k].box, candidate.box);
          return iou > 0.0 && iou >= iou_threshold;
        });
    if (!suppressed) kept.push_back(index);
  }
  return kept;
}

}  // namespace voxdet
