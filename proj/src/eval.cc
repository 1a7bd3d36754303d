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

#include "voxdet/eval.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "voxdet/error.h"

namespace voxdet {
namespace {

// affinity(det, gt) is maximized; passes(affinity) decides the match.
template <typename Affinity, typename Passes>
MatchResult GreedyMatch(std::span<const Detection> detections,
                        std::span<const GroundTruthObject> gts,
                        Affinity affinity, Passes passes) {
  MatchResult result;
  result.labels.assign(detections.size(), MatchLabel::kFalsePositive);
  result.matched_gt.assign(detections.size(), -1);
  result.gt_matched.assign(gts.size(), false);
  for (size_t d : ScoreOrder(detections)) {
    int best = -1;
    double best_affinity = 0.0;
    bool hits_ignored = false;
    for (size_t g = 0; g < gts.size(); ++g) {
      const double a = affinity(detections[d].box, gts[g].box);
      if (gts[g].ignore) {
        hits_ignored = hits_ignored || passes(a);
        continue;
      }
      if (result.gt_matched[g]) continue;
      if (best < 0 || a > best_affinity) {
        best = static_cast<int>(g);
        best_affinity = a;
      }
    }
    if (best >= 0 && passes(best_affinity)) {
      result.labels[d] = MatchLabel::kTruePositive;
      result.matched_gt[d] = best;
      result.gt_matched[best] = true;
    } else if (hits_ignored) {
      result.labels[d] = MatchLabel::kIgnored;
    }
  }
  return result;
}

double CenterDistance(const Box3D& a, const Box3D& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace

MatchResult MatchIou(std::span<const Detection> detections,
                     std::span<const GroundTruthObject> gts,
                     double iou_threshold, IouKind kind) {
  const auto iou = [kind](const Box3D& a, const Box3D& b) {
    return kind == IouKind::k3d ? Iou3d(a, b) : IouBev(a, b);
  };
  return GreedyMatch(detections, gts, iou,
                     [iou_threshold](double v) { return v >= iou_threshold; });
}

MatchResult MatchDistance(std::span<const Detection> detections,
                          std::span<const GroundTruthObject> gts,
                          double distance_threshold) {
  return GreedyMatch(
      detections, gts,
      [](const Box3D& a, const Box3D& b) { return -CenterDistance(a, b); },
      [distance_threshold](double v) { return -v <= distance_threshold; });
}

PrCurve AveragePrecision(std::span<const double> scores,
                         std::span<const MatchLabel> labels, int num_gt,
                         ApMode mode) {
  if (scores.size() != labels.size()) {
    throw ValidationError("scores and labels differ in length");
  }
  if (num_gt < 0) throw ValidationError("num_gt must be non-negative");
  std::vector<size_t> order(scores.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return scores[a] > scores[b]; });

  PrCurve curve;
  int tp = 0;
  int seen = 0;
  for (size_t i : order) {
    if (labels[i] == MatchLabel::kIgnored) continue;
    ++seen;
    if (labels[i] == MatchLabel::kTruePositive) ++tp;
    const double recall = num_gt > 0 ? static_cast<double>(tp) / num_gt : 0.0;
    curve.points.push_back({recall, static_cast<double>(tp) / seen});
  }
  if (num_gt == 0 || curve.points.empty()) return curve;

  // Precision envelope: max precision at this or any higher recall.
  std::vector<double> envelope(curve.points.size());
  double running = 0.0;
  for (size_t i = curve.points.size(); i-- > 0;) {
    running = std::max(running, curve.points[i].precision);
    envelope[i] = running;
  }

  if (mode == ApMode::kInterp40) {
    double sum = 0.0;
    size_t cursor = 0;
    for (int k = 1; k <= 40; ++k) {
      const double r = k / 40.0;
      while (cursor < curve.points.size() && curve.points[cursor].recall < r) {
        ++cursor;
      }
      if (cursor < curve.points.size()) sum += envelope[cursor];
    }
    curve.ap = sum / 40.0;
  } else {
    double previous_recall = 0.0;
    double area = 0.0;
    for (size_t i = 0; i < curve.points.size(); ++i) {
      area += (curve.points[i].recall - previous_recall) * envelope[i];
      previous_recall = curve.points[i].recall;
    }
    curve.ap = area;
  }
  return curve;
}

PrCurve AveragePrecision(std::span<const Detection> detections,
                         const MatchResult& match, int num_gt, ApMode mode) {
  std::vector<double> scores;
  scores.reserve(detections.size());
  for (const auto& d : detections) scores.push_back(d.score);
  return AveragePrecision(scores, match.labels, num_gt, mode);
}

int CountEvaluated(std::span<const GroundTruthObject> gts) {
  return static_cast<int>(std::count_if(
      gts.begin(), gts.end(), [](const auto& g) { return !g.ignore; }));
}

TpErrors ComputeTpErrors(std::span<const MatchedPair> pairs, AoeMode mode) {
  if (pairs.empty()) throw ValidationError("TP errors need at least one match");
  TpErrors sum;
  for (const auto& [pred, gt] : pairs) {
    sum.ate += CenterDistance(pred, gt);
    const double inter = std::min(pred.w, gt.w) * std::min(pred.l, gt.l) *
                         std::min(pred.h, gt.h);
    sum.ase += std::max(0.0, 1.0 - inter / (pred.volume() + gt.volume() - inter));
    const double diff = NormalizeAngle(pred.theta - gt.theta);
    if (mode == AoeMode::kOrientation) {
      sum.aoe += std::abs(diff);
    } else {
      sum.aoe += diff < 0.0 ? diff + 2.0 * std::numbers::pi : diff;
    }
  }
  const double n = static_cast<double>(pairs.size());
  return {sum.ate / n, sum.ase / n, sum.aoe / n};
}

std::vector<MatchedPair> TruePositivePairs(std::span<const Detection> detections,
                                           std::span<const GroundTruthObject> gts,
                                           const MatchResult& match) {
  std::vector<MatchedPair> pairs;
  for (size_t d = 0; d < detections.size(); ++d) {
    if (match.labels[d] != MatchLabel::kTruePositive) continue;
    pairs.push_back({detections[d].box, gts[match.matched_gt[d]].box});
  }
  return pairs;
}

ClassApReport MapByClass(std::span<const Detection> detections,
                         std::span<const GroundTruthObject> gts,
                         double iou_threshold, IouKind kind) {
  std::set<int> classes;
  for (const auto& g : gts) {
    if (!g.ignore) classes.insert(g.class_id);
  }
  ClassApReport report;
  for (int cls : classes) {
    std::vector<Detection> class_dets;
    std::vector<GroundTruthObject> class_gts;
    for (const auto& d : detections) {
      if (d.class_id == cls) class_dets.push_back(d);
    }
    for (const auto& g : gts) {
      if (g.class_id == cls) class_gts.push_back(g);
    }
    const MatchResult match = MatchIou(class_dets, class_gts, iou_threshold, kind);
    report.per_class[cls] = AveragePrecision(class_dets, match,
                                             CountEvaluated(class_gts),
                                             ApMode::kAllPoints);
  }
  if (!report.per_class.empty()) {
    double sum = 0.0;
    for (const auto& [cls, curve] : report.per_class) sum += curve.ap;
    report.mean_ap = sum / static_cast<double>(report.per_class.size());
  }
  return report;
}

std::optional<Difficulty> KittiDifficulty(double bbox_height_px, int occlusion,
                                          double truncation) {
  static constexpr double kMinHeight[] = {40.0, 25.0, 25.0};
  static constexpr int kMaxOcclusion[] = {0, 1, 2};
  static constexpr double kMaxTruncation[] = {0.15, 0.30, 0.50};
  for (int level = 0; level < 3; ++level) {
    if (bbox_height_px >= kMinHeight[level] && occlusion <= kMaxOcclusion[level] &&
        truncation <= kMaxTruncation[level]) {
      return static_cast<Difficulty>(level);
    }
  }
  return std::nullopt;
}

std::vector<GroundTruthObject> RestrictToDifficulty(
    std::span<const GroundTruthObject> gts, Difficulty level) {
  std::vector<GroundTruthObject> out(gts.begin(), gts.end());
  for (auto& g : out) {
    if (g.difficulty && *g.difficulty > level) g.ignore = true;
  }
  return out;
}

}  // namespace voxdet
