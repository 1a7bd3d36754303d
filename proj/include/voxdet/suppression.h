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

#ifndef VOXDET_SUPPRESSION_H_
#define VOXDET_SUPPRESSION_H_

#include <span>
#include <vector>

#include "voxdet/geometry.h"

namespace voxdet {

struct Detection {
  Box3D box;
  double score = 0.0;
  int class_id = 0;

  // Throws ValidationError unless the box is valid and score is in [0, 1].
  void Validate() const;
};

// Indices of `detections` sorted by descending score, ties by ascending
// index.
std::vector<size_t> ScoreOrder(std::span<const Detection> detections);

// Greedy class-wise NMS on ground-plane footprints. A detection is dropped iff
// some kept detection of the same class overlaps it with BEV rotated IoU > 0
// and >= `iou_threshold`; disjoint footprints never suppress each other.
// Returns kept indices in score order.
std::vector<size_t> RotatedNms(std::span<const Detection> detections,
                               double iou_threshold);

}  // namespace voxdet

#endif  // VOXDET_SUPPRESSION_H_
