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

#include "voxdet/losses.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "voxdet/error.h"

namespace voxdet {
namespace {

void CheckBinary(int target) {
  if (target != 0 && target != 1) throw ValidationError("target must be 0 or 1");
}

}  // namespace

ScalarLoss FocalLoss(double p, int target, const FocalParams& params) {
  CheckBinary(target);
  if (!(p > 0.0 && p < 1.0)) {
    throw ValidationError("focal loss needs p strictly inside (0, 1)");
  }
  const double pt = target == 1 ? p : 1.0 - p;
  const double alpha_t = target == 1 ? params.alpha : 1.0 - params.alpha;
  const double q = 1.0 - pt;
  const double log_pt = std::log(pt);
  const double modulator = std::pow(q, params.gamma);
  ScalarLoss out;
  out.value = -alpha_t * modulator * log_pt;
  // d/dp_t, then chain through p_t = p or 1 - p.
  const double d_pt =
      alpha_t * (params.gamma * std::pow(q, params.gamma - 1.0) * log_pt -
                 modulator / pt);
  out.grad = target == 1 ? d_pt : -d_pt;
  return out;
}

ScalarLoss SmoothL1(double pred, double target, double beta) {
  if (!(beta > 0.0)) throw ValidationError("smooth-L1 beta must be positive");
  const double d = pred - target;
  const double a = std::abs(d);
  if (a < beta) return {0.5 * d * d / beta, d / beta};
  return {a - 0.5 * beta, d > 0.0 ? 1.0 : -1.0};
}

DirLoss DirCrossEntropy(const std::array<double, 2>& logits, int target) {
  CheckBinary(target);
  if (!std::isfinite(logits[0]) || !std::isfinite(logits[1])) {
    throw ValidationError("direction logits must be finite");
  }
  const double hi = std::max(logits[0], logits[1]);
  const double log_sum =
      hi + std::log(std::exp(logits[0] - hi) + std::exp(logits[1] - hi));
  DirLoss out;
  out.value = log_sum - logits[target];
  for (int k = 0; k < 2; ++k) {
    out.grad[k] = std::exp(logits[k] - log_sum) - (k == target ? 1.0 : 0.0);
  }
  return out;
}

ScalarLoss CenternessBce(double pred, double target) {
  if (!(pred > 0.0 && pred < 1.0)) {
    throw ValidationError("centerness prediction must lie in (0, 1)");
  }
  if (!(target >= 0.0 && target <= 1.0)) {
    throw ValidationError("centerness target must lie in [0, 1]");
  }
  ScalarLoss out;
  out.value = -(target * std::log(pred) + (1.0 - target) * std::log1p(-pred));
  out.grad = (pred - target) / (pred * (1.0 - pred));
  return out;
}

double Iou3dLoss(const Box3D& pred, const Box3D& gt) { return 1.0 - Iou3d(pred, gt); }

std::array<double, 7> Iou3dLossNumericalGradient(const Box3D& pred,
                                                 const Box3D& gt, double eps) {
  const std::array<double, 7> base = {pred.x, pred.y, pred.z, pred.w,
                                      pred.h, pred.l, pred.theta};
  const auto eval = [&](const std::array<double, 7>& p) {
    return Iou3dLoss(Box3D(p[0], p[1], p[2], p[3], p[4], p[5], p[6]), gt);
  };
  std::array<double, 7> grad{};
  for (int i = 0; i < 7; ++i) {
    auto plus = base;
    auto minus = base;
    plus[i] += eps;
    minus[i] -= eps;
    grad[i] = (eval(plus) - eval(minus)) / (2.0 * eps);
  }
  return grad;
}

double OutdoorTotal(double loc, double cls, double dir, int64_t n_pos,
                    const OutdoorLossWeights& weights) {
  if (n_pos < 0) throw ValidationError("n_pos must be non-negative");
  if (n_pos == 0) return weights.cls * cls;
  return (weights.loc * loc + weights.cls * cls + weights.dir * dir) /
         static_cast<double>(n_pos);
}

double IndoorTotal(double loc, double cls, double centerness, int64_t n_pos) {
  if (n_pos < 0) throw ValidationError("n_pos must be non-negative");
  if (n_pos == 0) return cls;
  return (loc + cls + centerness) / static_cast<double>(n_pos);
}

PoseLossResult PoseLoss(const PoseAngles& pred, const PoseAngles& gt) {
  PoseLossResult out;
  const double residuals[2] = {gt.pitch - pred.pitch, gt.roll - pred.roll};
  for (int k = 0; k < 2; ++k) {
    const double s = std::sin(residuals[k]);
    out.value += std::abs(s);
    // d|sin(r)|/d pred = -sign(sin r) cos r.
    if (s > 0.0) {
      out.grad[k] = -std::cos(residuals[k]);
    } else if (s < 0.0) {
      out.grad[k] = std::cos(residuals[k]);
    }
  }
  return out;
}

double ExtraTotal(const Box3D& layout_pred, const Box3D& layout_gt,
                  const PoseAngles& pose_pred, const PoseAngles& pose_gt,
                  const ExtraLossWeights& weights) {
  return weights.layout * Iou3dLoss(layout_pred, layout_gt) +
         weights.pose * PoseLoss(pose_pred, pose_gt).value;
}

GradCheckResult GradCheck(const DifferentiableFn& f, std::span<const double> x,
                          double eps) {
  GradCheckResult result;
  result.analytic.assign(x.size(), 0.0);
  result.numeric.assign(x.size(), 0.0);
  f(x, result.analytic);
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> scratch(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + eps;
    const double plus = f(probe, scratch);
    probe[i] = x[i] - eps;
    const double minus = f(probe, scratch);
    probe[i] = x[i];
    result.numeric[i] = (plus - minus) / (2.0 * eps);
    const double a = result.analytic[i];
    const double n = result.numeric[i];
    const double error =
        std::abs(a - n) / std::max({std::abs(a), std::abs(n), 1e-8});
    if (error > result.max_rel_error) {
      result.max_rel_error = error;
      result.worst_coordinate = i;
    }
  }
  return result;
}

namespace {

class Sampler {
 public:
  explicit Sampler(uint64_t seed) : engine_(seed) {}
  // Platform-independent uniform in [lo, hi).
  double Uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  int Bit() { return static_cast<int>(engine_() >> 63); }

 private:
  std::mt19937_64 engine_;
};

// Keeps |x - kink| >= gap for every kink.
double AwayFrom(Sampler& rng, double lo, double hi, std::span<const double> kinks,
                double gap) {
  for (;;) {
    const double x = rng.Uniform(lo, hi);
    if (std::none_of(kinks.begin(), kinks.end(),
                     [&](double k) { return std::abs(x - k) < gap; })) {
      return x;
    }
  }
}

}  // namespace

std::vector<LossGradientReport> CheckLossGradients(uint64_t seed, int points,
                                                   double eps) {
  Sampler rng(seed);
  std::vector<LossGradientReport> reports;
  const auto run = [&](const std::string& name, auto make_case) {
    LossGradientReport report{name, points, 0.0};
    for (int i = 0; i < points; ++i) {
      auto [fn, x] = make_case();
      report.max_rel_error =
          std::max(report.max_rel_error, GradCheck(fn, x, eps).max_rel_error);
    }
    reports.push_back(report);
  };

  run("focal", [&] {
    const int target = rng.Bit();
    const double p = rng.Uniform(0.05, 0.95);
    DifferentiableFn fn = [target](std::span<const double> x, std::span<double> g) {
      const auto r = FocalLoss(x[0], target);
      g[0] = r.grad;
      return r.value;
    };
    return std::pair{fn, std::vector<double>{p}};
  });
  run("smooth_l1", [&] {
    const double beta = kDefaultSmoothL1Beta;
    const double target = rng.Uniform(-2.0, 2.0);
    const double kinks[] = {-beta, beta};
    const double d = AwayFrom(rng, -3.0, 3.0, kinks, 0.01);
    DifferentiableFn fn = [target](std::span<const double> x, std::span<double> g) {
      const auto r = SmoothL1(x[0], target);
      g[0] = r.grad;
      return r.value;
    };
    return std::pair{fn, std::vector<double>{target + d}};
  });
  run("dir_cross_entropy", [&] {
    const int target = rng.Bit();
    std::vector<double> logits = {rng.Uniform(-4.0, 4.0), rng.Uniform(-4.0, 4.0)};
    DifferentiableFn fn = [target](std::span<const double> x, std::span<double> g) {
      const auto r = DirCrossEntropy({x[0], x[1]}, target);
      g[0] = r.grad[0];
      g[1] = r.grad[1];
      return r.value;
    };
    return std::pair{fn, logits};
  });
  run("centerness_bce", [&] {
    const double target = rng.Uniform(0.0, 1.0);
    const double p = rng.Uniform(0.05, 0.95);
    DifferentiableFn fn = [target](std::span<const double> x, std::span<double> g) {
      const auto r = CenternessBce(x[0], target);
      g[0] = r.grad;
      return r.value;
    };
    return std::pair{fn, std::vector<double>{p}};
  });
  run("pose", [&] {
    const PoseAngles gt{rng.Uniform(-1.0, 1.0), rng.Uniform(-1.0, 1.0)};
    const double pi = std::numbers::pi;
    const double kinks[] = {-2 * pi, -pi, 0.0, pi, 2 * pi};
    std::vector<double> pred = {gt.pitch - AwayFrom(rng, -4.0, 4.0, kinks, 0.05),
                                gt.roll - AwayFrom(rng, -4.0, 4.0, kinks, 0.05)};
    DifferentiableFn fn = [gt](std::span<const double> x, std::span<double> g) {
      const auto r = PoseLoss({x[0], x[1]}, gt);
      g[0] = r.grad[0];
      g[1] = r.grad[1];
      return r.value;
    };
    return std::pair{fn, pred};
  });
  return reports;
}

double IouLossStepConsistency(uint64_t seed, int points, double coarse,
                              double fine) {
  Sampler rng(seed);
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const Box3D gt(rng.Uniform(-1, 1), rng.Uniform(-1, 1), rng.Uniform(-0.5, 0.5),
                   rng.Uniform(0.8, 2.0), rng.Uniform(0.8, 2.0),
                   rng.Uniform(0.8, 2.0), rng.Uniform(-3.1, 3.1));
    const Box3D pred(gt.x + rng.Uniform(-0.4, 0.4), gt.y + rng.Uniform(-0.4, 0.4),
                     gt.z + rng.Uniform(-0.3, 0.3), gt.w * rng.Uniform(0.7, 1.3),
                     gt.h * rng.Uniform(0.7, 1.3), gt.l * rng.Uniform(0.7, 1.3),
                     gt.theta + rng.Uniform(-0.6, 0.6));
    const auto a = Iou3dLossNumericalGradient(pred, gt, coarse);
    const auto b = Iou3dLossNumericalGradient(pred, gt, fine);
    double norm = 0.0;
    for (int k = 0; k < 7; ++k) norm = std::max({norm, std::abs(a[k]), std::abs(b[k])});
    for (int k = 0; k < 7; ++k) {
      // Relative to the gradient's largest component so that near-zero
      // components do not dominate.
      worst = std::max(worst, std::abs(a[k] - b[k]) / std::max(norm, 1e-8));
    }
  }
  return worst;
}

}  // namespace voxdet
