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

#ifndef VOXDET_EVAL_H_
#define VOXDET_EVAL_H_

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "voxdet/geometry.h"
#include "voxdet/suppression.h"

namespace voxdet {

enum class Difficulty { kEasy = 0, kModerate = 1, kHard = 2 };

struct GroundTruthObject {
  Box3D box;
  int class_id = 0;
  std::optional<Difficulty> difficulty;
  // Ignored objects neither reward nor penalize detections that match them.
  bool ignore = false;
};

enum class MatchLabel { kTruePositive, kFalsePositive, kIgnored };

struct MatchResult {
  std::vector<MatchLabel> labels;  // per detection, input order
  std::vector<int> matched_gt;     // per detection; -1 if none
  std::vector<bool> gt_matched;    // per ground truth
};

enum class IouKind { k3d, kBev };

// Greedy one-to-one matching in descending score order (ties by index). Each
// detection takes the unmatched, non-ignored gt with the highest IoU; it is a
// true positive iff that IoU >= threshold. A detection that fails but reaches
// the threshold on an ignored gt is labeled kIgnored. Classes are not
// inspected; filter beforehand.
MatchResult MatchIou(std::span<const Detection> detections,
                     std::span<const GroundTruthObject> gts,
                     double iou_threshold, IouKind kind);

// As MatchIou with the nearest unmatched gt by ground-plane center distance
// and the criterion distance <= threshold (meters).
MatchResult MatchDistance(std::span<const Detection> detections,
                          std::span<const GroundTruthObject> gts,
                          double distance_threshold);

enum class ApMode {
  kInterp40,   // mean interpolated precision at recall 1/40, 2/40, ..., 1
  kAllPoints,  // area under the monotone precision envelope
};

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;
};

struct PrCurve {
  std::vector<PrPoint> points;  // one per scored, non-ignored detection
  double ap = 0.0;
};

// Precision/recall staircase over detections in descending score order.
// kIgnored detections are skipped. AP is 0 when num_gt == 0.
PrCurve AveragePrecision(std::span<const double> scores,
                         std::span<const MatchLabel> labels, int num_gt,
                         ApMode mode);

// Convenience: AP of a finished match.
PrCurve AveragePrecision(std::span<const Detection> detections,
                         const MatchResult& match, int num_gt, ApMode mode);

int CountEvaluated(std::span<const GroundTruthObject> gts);

struct TpErrors {
  double ate = 0.0;
  double ase = 0.0;
  double aoe = 0.0;
};

enum class AoeMode {
  kOrientation,  // |yaw difference| wrapped to [0, pi]
  kHeading,      // yaw difference wrapped to [0, 2 pi)
};

struct MatchedPair {
  Box3D pred;
  Box3D gt;
};

// Mean ground-plane center distance, mean (1 - IoU) after aligning centers
// and yaw, and mean yaw error. Throws ValidationError on an empty input.
TpErrors ComputeTpErrors(std::span<const MatchedPair> pairs,
                         AoeMode mode = AoeMode::kOrientation);

// Pairs (detection box, gt box) of every true positive in `match`.
std::vector<MatchedPair> TruePositivePairs(std::span<const Detection> detections,
                                           std::span<const GroundTruthObject> gts,
                                           const MatchResult& match);

struct ClassApReport {
  std::map<int, PrCurve> per_class;  // classes with at least one evaluated gt
  double mean_ap = 0.0;
};

// Per-class all-points AP at an IoU threshold. Classes without evaluated gts
// are left out of the mean.
ClassApReport MapByClass(std::span<const Detection> detections,
                         std::span<const GroundTruthObject> gts,
                         double iou_threshold, IouKind kind = IouKind::k3d);

// Standard KITTI devkit bins: min 2D box height 40/25/25 px, max occlusion
// 0/1/2, max truncation 0.15/0.30/0.50. Returns the easiest level the object
// qualifies for, or nullopt when it must be ignored.
std::optional<Difficulty> KittiDifficulty(double bbox_height_px, int occlusion,
                                          double truncation);

// Copy of `gts` in which objects harder than `level` are marked ignored.
// Objects without a difficulty are left unchanged.
std::vector<GroundTruthObject> RestrictToDifficulty(
    std::span<const GroundTruthObject> gts, Difficulty level);

}  // namespace voxdet

#endif  // VOXDET_EVAL_H_
