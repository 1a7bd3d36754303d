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

#ifndef VOXDET_LOSSES_H_
#define VOXDET_LOSSES_H_

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "voxdet/geometry.h"

namespace voxdet {

// Scalar loss with its derivative with respect to the prediction.
struct ScalarLoss {
  double value = 0.0;
  double grad = 0.0;
};

struct FocalParams {
  double alpha = 0.25;
  double gamma = 2.0;
};

// -alpha_t (1 - p_t)^gamma log(p_t). `target` must be 0 or 1 and p must lie
// strictly inside (0, 1); otherwise ValidationError.
ScalarLoss FocalLoss(double p, int target, const FocalParams& params = {});

inline constexpr double kDefaultSmoothL1Beta = 1.0 / 9.0;

// 0.5 d^2 / beta for |d| < beta, |d| - 0.5 beta otherwise, d = pred - target.
ScalarLoss SmoothL1(double pred, double target,
                    double beta = kDefaultSmoothL1Beta);

struct DirLoss {
  double value = 0.0;
  std::array<double, 2> grad{};
};

// Two-class softmax cross-entropy. `target` is 0 or 1.
DirLoss DirCrossEntropy(const std::array<double, 2>& logits, int target);

// Binary cross-entropy for the centerness branch; pred in (0, 1),
// target in [0, 1].
ScalarLoss CenternessBce(double pred, double target);

// 1 - Iou3d(pred, gt). Only a numerical gradient is provided (below).
double Iou3dLoss(const Box3D& pred, const Box3D& gt);

// Central-difference gradient of Iou3dLoss with respect to the seven box
// parameters of `pred` (x, y, z, w, h, l, theta).
std::array<double, 7> Iou3dLossNumericalGradient(const Box3D& pred,
                                                 const Box3D& gt, double eps);

struct OutdoorLossWeights {
  double loc = 2.0;
  double cls = 1.0;
  double dir = 0.2;
};

struct ExtraLossWeights {
  double layout = 0.1;
  double pose = 1.0;
};

// Component losses are sums over positives; normalization happens here. With
// n_pos == 0 the location and direction terms are dropped and the
// classification sum is divided by 1.
double OutdoorTotal(double loc, double cls, double dir, int64_t n_pos,
                    const OutdoorLossWeights& weights = {});

double IndoorTotal(double loc, double cls, double centerness, int64_t n_pos);

struct PoseAngles {
  double pitch = 0.0;
  double roll = 0.0;
};

struct PoseLossResult {
  double value = 0.0;
  // d value / d pred.pitch, d value / d pred.roll; 0 at a zero residual.
  std::array<double, 2> grad{};
};

// |sin(pitch_gt - pitch)| + |sin(roll_gt - roll)|.
PoseLossResult PoseLoss(const PoseAngles& pred, const PoseAngles& gt);

double ExtraTotal(const Box3D& layout_pred, const Box3D& layout_gt,
                  const PoseAngles& pose_pred, const PoseAngles& pose_gt,
                  const ExtraLossWeights& weights = {});

// f(x, grad) returns the value at x and writes the analytic gradient.
using DifferentiableFn =
    std::function<double(std::span<const double> x, std::span<double> grad)>;

struct GradCheckResult {
  double max_rel_error = 0.0;
  size_t worst_coordinate = 0;
  std::vector<double> analytic;
  std::vector<double> numeric;
};

// Compares the analytic gradient against central differences coordinate by
// coordinate. Relative error uses max(|analytic|, |numeric|, 1e-8) as the
// denominator.
GradCheckResult GradCheck(const DifferentiableFn& f, std::span<const double> x,
                          double eps = 1e-6);

struct LossGradientReport {
  std::string name;
  int points = 0;
  double max_rel_error = 0.0;
};

// Runs GradCheck on every loss with an analytic gradient (focal, smooth-L1,
// direction CE, centerness BCE, pose) at `points` seeded generic points, i.e.
// away from kinks and domain boundaries.
std::vector<LossGradientReport> CheckLossGradients(uint64_t seed, int points,
                                                   double eps = 1e-6);

// Largest relative disagreement between the numerical IoU-loss gradients at
// steps `coarse` and `fine`, over `points` seeded overlapping box pairs.
double IouLossStepConsistency(uint64_t seed, int points, double coarse = 1e-4,
                              double fine = 1e-5);

}  // namespace voxdet

#endif  // VOXDET_LOSSES_H_
