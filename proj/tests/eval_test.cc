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

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "test_support.h"
#include "voxdet/error.h"

namespace voxdet {
namespace {

using L = MatchLabel;
constexpr auto TP = MatchLabel::kTruePositive;
constexpr auto FP = MatchLabel::kFalsePositive;

std::vector<GroundTruthObject> RandomGts(testing::Random& rng, int count, int classes) {
  std::vector<GroundTruthObject> gts;
  for (int i = 0; i < count; ++i) {
    GroundTruthObject g;
    g.box = Box3D(rng.Uniform(-30, 30), rng.Uniform(-30, 30), rng.Uniform(-2, 0),
                  rng.Uniform(1.4, 2.0), rng.Uniform(1.3, 1.8), rng.Uniform(3.5, 4.5),
                  rng.Uniform(-3.1, 3.1));
    g.class_id = rng.UniformInt(0, classes - 1);
    gts.push_back(g);
  }
  return gts;
}

std::vector<Detection> SelfDetections(const std::vector<GroundTruthObject>& gts) {
  std::vector<Detection> dets;
  for (size_t i = 0; i < gts.size(); ++i) {
    dets.push_back({gts[i].box, 1.0 - 0.01 * static_cast<double>(i % 50), gts[i].class_id});
  }
  return dets;
}

TEST(AveragePrecisionTest, HandIntegratedStaircases) {
  struct Case {
    std::vector<L> labels;
    int num_gt;
    double all_points;
    double interp40;
  };
  const std::vector<Case> cases = {
      {{TP, FP, TP}, 2, 0.5 + 0.5 * 2.0 / 3.0, (20 + 20 * 2.0 / 3.0) / 40},
      {{TP, TP, TP, TP}, 4, 1.0, 1.0},
      {{FP, FP, TP}, 1, 1.0 / 3.0, 1.0 / 3.0},
      {{TP, FP, FP, TP}, 4, 0.25 + 0.25 * 0.5, (10 + 10 * 0.5) / 40},
      {{FP, TP, TP, FP, TP}, 5, 0.4 * 2.0 / 3.0 + 0.2 * 0.6, (16 * 2.0 / 3.0 + 8 * 0.6) / 40},
  };
  for (const auto& c : cases) {
    std::vector<double> scores;
    for (size_t i = 0; i < c.labels.size(); ++i) scores.push_back(1.0 - 0.1 * i);
    EXPECT_NEAR(AveragePrecision(scores, c.labels, c.num_gt, ApMode::kAllPoints).ap,
                c.all_points, 1e-9);
    EXPECT_NEAR(AveragePrecision(scores, c.labels, c.num_gt, ApMode::kInterp40).ap,
                c.interp40, 1e-9);
  }
}

TEST(AveragePrecisionTest, DegenerateInputs) {
  const std::vector<double> none;
  const std::vector<L> no_labels;
  EXPECT_EQ(AveragePrecision(none, no_labels, 3, ApMode::kAllPoints).ap, 0.0);
  const std::vector<double> one = {0.5};
  const std::vector<L> fp = {FP};
  EXPECT_EQ(AveragePrecision(one, fp, 0, ApMode::kAllPoints).ap, 0.0);
  EXPECT_THROW(AveragePrecision(one, no_labels, 1, ApMode::kAllPoints), ValidationError);
}

TEST(EvalTest, SelfEvaluationIsPerfect) {
  testing::Random rng(5);
  const auto gts = RandomGts(rng, 30, 3);
  const auto dets = SelfDetections(gts);
  const auto report = MapByClass(dets, gts, 0.7);
  EXPECT_NEAR(report.mean_ap, 1.0, 1e-12);
  const auto match = MatchIou(dets, gts, 0.7, IouKind::k3d);
  const auto errors = ComputeTpErrors(TruePositivePairs(dets, gts, match));
  EXPECT_NEAR(errors.ate, 0.0, 1e-12);
  EXPECT_NEAR(errors.ase, 0.0, 1e-12);
  EXPECT_NEAR(errors.aoe, 0.0, 1e-12);
  const auto dist = MatchDistance(dets, gts, 0.5);
  EXPECT_NEAR(AveragePrecision(dets, dist, CountEvaluated(gts), ApMode::kInterp40).ap, 1.0,
              1e-12);
}

TEST(EvalTest, IgnoredGroundTruthIsNeutral) {
  std::vector<GroundTruthObject> gts(2);
  gts[0].box = Box3D(0, 0, 0, 1, 1, 1, 0);
  gts[1].box = Box3D(5, 0, 0, 1, 1, 1, 0);
  gts[1].ignore = true;
  const std::vector<Detection> dets = {{gts[0].box, 0.9, 0}, {gts[1].box, 0.95, 0}};
  const auto match = MatchIou(dets, gts, 0.5, IouKind::k3d);
  EXPECT_EQ(match.labels[0], TP);
  EXPECT_EQ(match.labels[1], MatchLabel::kIgnored);
  EXPECT_EQ(CountEvaluated(gts), 1);
  EXPECT_DOUBLE_EQ(AveragePrecision(dets, match, 1, ApMode::kAllPoints).ap, 1.0);
}

TEST(EvalTest, EachGroundTruthMatchedOnce) {
  std::vector<GroundTruthObject> gts(1);
  gts[0].box = Box3D(0, 0, 0, 1, 1, 1, 0);
  const std::vector<Detection> dets = {{gts[0].box, 0.9, 0}, {gts[0].box, 0.8, 0}};
  const auto match = MatchIou(dets, gts, 0.5, IouKind::kBev);
  EXPECT_EQ(match.labels[0], TP);
  EXPECT_EQ(match.labels[1], FP);
  EXPECT_EQ(match.matched_gt[1], -1);
}

TEST(EvalTest, DistanceThresholdMonotonicity) {
  testing::Random rng(13);
  for (int scene = 0; scene < 10; ++scene) {
    auto gts = RandomGts(rng, 20, 1);
    std::vector<Detection> dets;
    for (const auto& g : gts) {
      if (rng.Uniform(0, 1) < 0.2) continue;
      Box3D b = g.box;
      b.x += rng.Uniform(-2.5, 2.5);
      b.y += rng.Uniform(-2.5, 2.5);
      dets.push_back({b, rng.Uniform(0, 1), 0});
    }
    for (int i = 0; i < 5; ++i) {
      dets.push_back({Box3D(rng.Uniform(-30, 30), rng.Uniform(-30, 30), -1, 1.6, 1.5, 4, 0),
                      rng.Uniform(0, 1), 0});
    }
    double previous = -1.0;
    for (double d : {0.5, 1.0, 2.0, 4.0}) {
      const auto match = MatchDistance(dets, gts, d);
      const double ap = AveragePrecision(dets, match, 20, ApMode::kAllPoints).ap;
      EXPECT_GE(ap, previous - 1e-12);
      previous = ap;
    }
  }
}

TEST(TpErrorsTest, KnownErrors) {
  const Box3D gt(0, 0, 0, 2, 2, 2, 0);
  const std::vector<MatchedPair> pairs = {{Box3D(3, 4, 0, 2, 2, 2, std::numbers::pi), gt}};
  auto e = ComputeTpErrors(pairs);
  EXPECT_DOUBLE_EQ(e.ate, 5.0);
  EXPECT_NEAR(e.ase, 0.0, 1e-12);
  EXPECT_NEAR(e.aoe, std::numbers::pi, 1e-12);
  const std::vector<MatchedPair> scaled = {{Box3D(0, 0, 0, 4, 2, 2, -0.5), gt}};
  e = ComputeTpErrors(scaled, AoeMode::kHeading);
  EXPECT_NEAR(e.ase, 0.5, 1e-12);
  EXPECT_NEAR(e.aoe, 2 * std::numbers::pi - 0.5, 1e-12);
}

TEST(DifficultyTest, KittiThresholds) {
  EXPECT_EQ(KittiDifficulty(40, 0, 0.15), Difficulty::kEasy);
  EXPECT_EQ(KittiDifficulty(39, 0, 0.0), Difficulty::kModerate);
  EXPECT_EQ(KittiDifficulty(30, 1, 0.3), Difficulty::kModerate);
  EXPECT_EQ(KittiDifficulty(25, 2, 0.5), Difficulty::kHard);
  EXPECT_EQ(KittiDifficulty(24, 0, 0.0), std::nullopt);
  EXPECT_EQ(KittiDifficulty(50, 3, 0.0), std::nullopt);
  EXPECT_EQ(KittiDifficulty(50, 0, 0.6), std::nullopt);
}

TEST(DifficultyTest, RestrictMarksOthersIgnored) {
  std::vector<GroundTruthObject> gts(3);
  gts[0].difficulty = Difficulty::kEasy;
  gts[1].difficulty = Difficulty::kHard;
  const auto moderate = RestrictToDifficulty(gts, Difficulty::kModerate);
  // gts[2] carries no difficulty and stays evaluated.
  EXPECT_EQ(CountEvaluated(moderate), 2);
  EXPECT_TRUE(moderate[1].ignore);
  EXPECT_EQ(CountEvaluated(RestrictToDifficulty(gts, Difficulty::kHard)), 3);
}

struct RandomCase {
  std::vector<double> scores;
  std::vector<L> labels;
  int num_gt = 0;
};

RandomCase RandomLabels(testing::Random& rng, int n) {
  RandomCase c;
  int tps = 0;
  for (int i = 0; i < n; ++i) {
    c.scores.push_back(rng.Uniform(0, 1));
    const bool tp = rng.Uniform(0, 1) < 0.6;
    tps += tp;
    c.labels.push_back(tp ? TP : FP);
  }
  c.num_gt = tps + rng.UniformInt(0, 10);
  return c;
}

TEST(AveragePrecisionTest, MonotoneRescalingInvariance) {
  testing::Random rng(79);
  for (int i = 0; i < 100; ++i) {
    auto c = RandomLabels(rng, 60);
    std::vector<double> rescaled;
    for (double s : c.scores) rescaled.push_back(std::exp(3 * s) - 7);
    for (auto mode : {ApMode::kAllPoints, ApMode::kInterp40}) {
      EXPECT_EQ(AveragePrecision(c.scores, c.labels, c.num_gt, mode).ap,
                AveragePrecision(rescaled, c.labels, c.num_gt, mode).ap);
    }
  }
}

TEST(AveragePrecisionTest, LowFalsePositiveAndMissingGt) {
  testing::Random rng(83);
  for (int i = 0; i < 100; ++i) {
    auto c = RandomLabels(rng, 40);
    for (auto mode : {ApMode::kAllPoints, ApMode::kInterp40}) {
      const double base = AveragePrecision(c.scores, c.labels, c.num_gt, mode).ap;
      auto worse = c;
      worse.scores.push_back(-1.0);
      worse.labels.push_back(FP);
      EXPECT_LE(AveragePrecision(worse.scores, worse.labels, worse.num_gt, mode).ap, base);
      int tps = 0;
      for (auto l : c.labels) tps += l == TP;
      if (c.num_gt > tps) {
        EXPECT_GE(AveragePrecision(c.scores, c.labels, c.num_gt - 1, mode).ap, base);
      }
    }
  }
}

TEST(AveragePrecisionTest, ModesAgreeWithinBand) {
  testing::Random rng(89);
  for (int i = 0; i < 50; ++i) {
    auto c = RandomLabels(rng, 100);
    const auto all = AveragePrecision(c.scores, c.labels, c.num_gt, ApMode::kAllPoints);
    const auto interp = AveragePrecision(c.scores, c.labels, c.num_gt, ApMode::kInterp40);
    EXPECT_NEAR(all.ap, interp.ap, 0.03);
    double previous_recall = 0.0;
    for (const auto& p : all.points) {
      EXPECT_GE(p.recall, previous_recall);
      EXPECT_GE(p.precision, 0.0);
      EXPECT_LE(p.precision, 1.0);
      previous_recall = p.recall;
    }
  }
}

TEST(TpErrorsTest, Ranges) {
  testing::Random rng(97);
  std::vector<MatchedPair> pairs;
  for (int i = 0; i < 500; ++i) {
    pairs.push_back({testing::RandomBox(rng), testing::RandomBox(rng)});
    const auto e = ComputeTpErrors(std::span<const MatchedPair>(pairs).last(1));
    EXPECT_GE(e.ate, 0.0);
    EXPECT_GE(e.ase, 0.0);
    EXPECT_LE(e.ase, 1.0);
    EXPECT_GE(e.aoe, 0.0);
    EXPECT_LE(e.aoe, std::numbers::pi);
  }
}

// Greedy nearest matching does not nest TP sets across thresholds: here the
// higher-scored detection is too far at 0.5 m but claims the object at 1 m.
TEST(EvalTest, DistanceTpSetsNeedNotNest) {
  std::vector<GroundTruthObject> gts(2);
  gts[0].box = Box3D(0, 0, 0, 1, 1, 1, 0);
  gts[1].box = Box3D(3, 0, 0, 1, 1, 1, 0);
  const std::vector<Detection> dets = {{Box3D(-0.8, 0, 0, 1, 1, 1, 0), 0.9, 0},
                                       {Box3D(0.3, 0, 0, 1, 1, 1, 0), 0.8, 0}};
  const auto tight = MatchDistance(dets, gts, 0.5);
  const auto loose = MatchDistance(dets, gts, 1.0);
  EXPECT_EQ(tight.labels, (std::vector<L>{FP, TP}));
  EXPECT_EQ(loose.labels, (std::vector<L>{TP, FP}));
}

TEST(EvalTest, DistanceTpCountIsMonotone) {
  testing::Random rng(101);
  for (int scene = 0; scene < 50; ++scene) {
    auto gts = RandomGts(rng, 15, 1);
    std::vector<Detection> dets;
    for (const auto& g : gts) {
      Box3D b = g.box;
      b.x += rng.Uniform(-3, 3);
      b.y += rng.Uniform(-3, 3);
      dets.push_back({b, rng.Uniform(0, 1), 0});
    }
    int previous = -1;
    for (double d : {0.5, 1.0, 2.0, 4.0}) {
      const auto match = MatchDistance(dets, gts, d);
      const int tps = static_cast<int>(std::count(match.labels.begin(), match.labels.end(), TP));
      EXPECT_GE(tps, previous);
      previous = tps;
    }
  }
}

}  // namespace
}  // namespace voxdet
