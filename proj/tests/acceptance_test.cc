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

// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "test_support.h"
#include "voxdet/codec.h"
#include "voxdet/config.h"
#include "voxdet/error.h"
#include "voxdet/eval.h"
#include "voxdet/kitti.h"
#include "voxdet/losses.h"
#include "voxdet/scene.h"
#include "voxdet/stub_features.h"
#include "voxdet/suppression.h"
#include "voxdet/volume_io.h"
#include "voxdet/voxelgrid.h"

namespace voxdet {
namespace {

using testing::Random;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void Check(bool condition, const std::string& what) {
    if (!condition && pass) detail << "first failure: " << what << "; ";
    pass = pass && condition;
  }
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<void(Outcome&)> run;
};

void GridPresets(Outcome& out) {
  struct Row {
    const char* name;
    AxisLimits limits;
    double s;
    std::array<int, 3> counts;
  };
  const Row rows[] = {
      {"kitti", {-39.68, 39.68, 0, 69.12, -2.92, 0.92}, 0.32, {248, 216, 12}},
      {"nuscenes", {-49.92, 49.92, -49.92, 49.92, -2.92, 0.92}, 0.32, {312, 312, 12}},
      {"sunrgbd", {-3.2, 3.2, 0, 6.4, -2.28, 0.28}, 0.16, {40, 40, 16}},
      {"scannet", {-3.2, 3.2, -3.2, 3.2, -1.28, 1.28}, 0.16, {40, 40, 16}},
  };
  for (const auto& row : rows) {
    const auto config = PresetConfig(row.name);
    out.Check(config.has_value(), std::string("preset ") + row.name);
    if (!config) continue;
    out.Check(config->limits == row.limits && config->voxel_size == row.s,
              std::string(row.name) + " limits");
    const auto g = config->Grid();
    out.Check(std::array<int, 3>{g.nx, g.ny, g.nz} == row.counts,
              std::string(row.name) + " counts");
    const AxisLimits& l = config->limits;
    out.Check(std::abs(g.nx * g.voxel_size - (l.x_max - l.x_min)) <= 1e-9 &&
                  std::abs(g.ny * g.voxel_size - (l.y_max - l.y_min)) <= 1e-9 &&
                  std::abs(g.nz * g.voxel_size - (l.z_max - l.z_min)) <= 1e-9,
              std::string(row.name) + " N*s = range");
  }
  out.detail << "4 presets";
}

void ProjectionOracle(Outcome& out) {
  Random rng(1001);
  int64_t valid = 0;
  for (int scene_index = 0; scene_index < 20; ++scene_index) {
    const auto scene = testing::RandomScene(rng, rng.UniformInt(1, 10), 2);
    for (const auto& view : scene.views) {
      const auto volume = ProjectView(view, scene.spec);
      out.Check(volume.mask == testing::BruteForceMask(view, scene.spec),
                "mask mismatch in scene " + std::to_string(scene_index));
      for (int iz = 0; iz < scene.spec.nz; ++iz) {
        for (int iy = 0; iy < scene.spec.ny; ++iy) {
          for (int ix = 0; ix < scene.spec.nx; ++ix) {
            const auto p = testing::BruteForceProject(view, scene.spec, ix, iy, iz);
            if (!p.valid) continue;
            ++valid;
            const auto f = volume.Features(scene.spec.VoxelIndex(ix, iy, iz));
            out.Check(f[0] == std::floor(p.u) && f[1] == std::floor(p.v),
                      "coordinate self-test");
          }
        }
      }
    }
  }
  out.detail << "20 scenes, " << valid << " valid voxel samples";
}

void AggregationChecks(Outcome& out) {
  Random rng(2002);
  double worst = 0.0;
  for (int scene_index = 0; scene_index < 10; ++scene_index) {
    const auto scene = testing::RandomScene(rng, rng.UniformInt(2, 8), 4);
    auto volumes = ProjectViews(scene.views, scene.spec);
    const auto base = Aggregate(volumes);
    for (int p = 0; p < 5; ++p) {
      std::shuffle(volumes.begin(), volumes.end(), rng.engine());
      const auto permuted = Aggregate(volumes);
      out.Check(permuted.mask == base.mask && permuted.data == base.data,
                "permutation changed bits");
    }
    const auto reference = testing::ReferenceAggregate(volumes);
    for (size_t v = 0; v < base.mask.size(); ++v) {
      for (int c = 0; c < base.channels; ++c) {
        const size_t i = v * base.channels + c;
        if (base.mask[v] == 0) {
          out.Check(base.data[i] == 0.0f, "zero-coverage voxel not zero");
        } else {
          worst = std::max(worst, std::abs(base.data[i] - reference[i]) /
                                      std::max(1.0, std::abs(reference[i])));
        }
      }
    }
  }
  out.Check(worst <= 1e-6, "mean vs reference");
  out.detail << "max rel. deviation " << worst;
}

void CodecRoundTrips(Outcome& out) {
  Random rng(3003);
  double outdoor = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Anchor anchor{rng.Uniform(-40, 40), rng.Uniform(-40, 40), rng.Uniform(-3, 1),
                        rng.Uniform(0.5, 3), rng.Uniform(0.5, 6), rng.Uniform(0.5, 3),
                        rng.Uniform(-kPi, kPi)};
    const Box3D gt(anchor.x + rng.Uniform(-3, 3), anchor.y + rng.Uniform(-3, 3),
                   anchor.z + rng.Uniform(-1, 1), rng.Uniform(0.3, 4), rng.Uniform(0.3, 4),
                   rng.Uniform(0.3, 8), anchor.theta + rng.Uniform(-0.999, 0.999) * kPi / 2);
    const Box3D back =
        DecodeOutdoor(EncodeOutdoor(gt, anchor), anchor, DirectionTarget(gt, anchor));
    outdoor = std::max({outdoor, std::abs(back.x - gt.x), std::abs(back.y - gt.y),
                        std::abs(back.z - gt.z), std::abs(back.w - gt.w),
                        std::abs(back.h - gt.h), std::abs(back.l - gt.l),
                        std::abs(NormalizeAngle(back.theta - gt.theta))});
  }
  out.Check(outdoor < 1e-9, "outdoor round trip");

  double indoor = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Box3D gt = testing::RandomBox(rng, 3.0, 0.2, 3.0, false);
    FcosLocation loc;
    loc.x = gt.x + rng.Uniform(-0.5, 0.5) * gt.l;
    loc.y = gt.y + rng.Uniform(-0.5, 0.5) * gt.w;
    loc.z = gt.z + rng.Uniform(-0.5, 0.5) * gt.h;
    const Box3D back = DecodeFcos(EncodeFcos(gt, loc), loc, true);
    indoor = std::max({indoor, std::abs(back.x - gt.x), std::abs(back.y - gt.y),
                       std::abs(back.z - gt.z), std::abs(back.w - gt.w),
                       std::abs(back.h - gt.h), std::abs(back.l - gt.l)});
  }
  out.Check(indoor < 1e-9, "indoor round trip");

  const auto spec = PresetConfig("scannet")->Grid();
  const auto locations = FcosLocations(spec);
  size_t largest = 0;
  for (int i = 0; i < 200; ++i) {
    const Box3D gt(rng.Uniform(-3.4, 3.4), rng.Uniform(-3.4, 3.4), rng.Uniform(-1.4, 1.4),
                   rng.Uniform(0.1, 3), rng.Uniform(0.1, 3), rng.Uniform(0.1, 3),
                   rng.Uniform(-kPi, kPi));
    const int level = RouteLevel(gt, spec.voxel_size);
    const auto got = CenterSampling(gt, locations, spec, level);
    largest = std::max(largest, got.size());
    out.Check(got.size() <= 27, "more than 27 candidates");
    out.Check(got == testing::ExhaustiveCenterSampling(gt, locations, spec, level),
              "center sampling differs from oracle");
  }
  out.detail << "outdoor err " << outdoor << ", indoor err " << indoor
             << ", max candidates " << largest;
}

void RotatedIou(Outcome& out) {
  Random rng(4004);
  double mc_worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Box3D a = testing::RandomBox(rng, 1.0, 0.5, 3.0);
    Box3D b = testing::RandomBox(rng, 1.0, 0.5, 3.0);
    if (i % 10 == 0) {  // nested
      b = Box3D(a.x, a.y, a.z, 0.3 * a.w, 0.3 * a.h, 0.3 * a.l, rng.Uniform(-kPi, kPi));
    } else if (i % 10 == 1) {  // disjoint
      b.x += 20;
    }
    mc_worst = std::max(mc_worst,
                        std::abs(Iou3d(a, b) - testing::MonteCarloIou3d(a, b, 1000000, rng)));
  }
  out.Check(mc_worst <= 0.01, "Monte Carlo agreement");
  double exact_worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Box3D a = testing::RandomBox(rng, 1.5, 0.3, 3.0, false);
    const Box3D b = testing::RandomBox(rng, 1.5, 0.3, 3.0, false);
    exact_worst = std::max(exact_worst, std::abs(Iou3d(a, b) - testing::AxisAlignedIou3d(a, b)));
  }
  out.Check(exact_worst <= 1e-12, "axis-aligned closed form");
  out.detail << "MC max dev " << mc_worst << ", closed-form max dev " << exact_worst;
}

void Losses(Outcome& out) {
  out.Check(OutdoorTotal(1, 1, 1, 1) == 3.2, "outdoor_total(1,1,1,1) == 3.2");
  const ExtraLossWeights w;
  out.Check(w.layout == 0.1 && w.pose == 1.0, "extra weights");
  const Box3D layout(0, 0, 0, 5, 3, 6, 0);
  const Box3D layout_pred(0.3, -0.2, 0.1, 4.5, 3, 6.5, 0);
  const PoseAngles pp{0.1, 0.2};
  const PoseAngles pg{-0.1, 0.25};
  out.Check(ExtraTotal(layout_pred, layout, pp, pg) ==
                0.1 * Iou3dLoss(layout_pred, layout) + 1.0 * PoseLoss(pp, pg).value,
            "extra_total weighting");
  double worst = 0.0;
  for (const auto& report : CheckLossGradients(6006, 100)) {
    out.Check(report.points == 100 && report.max_rel_error < 1e-4, "gradient " + report.name);
    worst = std::max(worst, report.max_rel_error);
  }
  const double iou_fd = IouLossStepConsistency(6006, 100);
  out.Check(iou_fd < 0.01, "IoU loss FD step consistency");
  Random rng(6007);
  for (int i = 0; i < 1000; ++i) {
    const PoseAngles a{rng.Uniform(-kPi, kPi), rng.Uniform(-kPi, kPi)};
    const PoseAngles b{rng.Uniform(-kPi, kPi), rng.Uniform(-kPi, kPi)};
    const double v = PoseLoss(a, b).value;
    out.Check(std::abs(v - PoseLoss(b, a).value) <= 1e-12, "pose symmetry");
    out.Check(std::abs(v - PoseLoss({a.pitch + kPi, a.roll + kPi}, b).value) <= 1e-9,
              "pose periodicity");
  }
  out.detail << "max grad rel err " << worst << ", IoU FD consistency " << iou_fd;
}

void Nms(Outcome& out) {
  Random rng(7007);
  for (int i = 0; i < 100; ++i) {
    const auto dets = testing::RandomDetections(rng, 50, 3);
    const double threshold = rng.Uniform(0.0, 1.0);
    out.Check(RotatedNms(dets, threshold) == testing::ReferenceNms(dets, threshold),
              "reference mismatch on input " + std::to_string(i));
  }
  const auto dets = testing::RandomDetections(rng, 50, 2);
  const auto expected = RotatedNms(dets, 0.2);
  std::vector<std::future<std::vector<size_t>>> runs;
  for (int i = 0; i < 8; ++i) {
    runs.push_back(std::async(std::launch::async, [&] { return RotatedNms(dets, 0.2); }));
  }
  for (auto& run : runs) out.Check(run.get() == expected, "concurrent run differs");
  out.detail << "100 inputs, 8 concurrent runs";
}

void Metrics(Outcome& out) {
  Random rng(8008);
  // Self-evaluation.
  std::vector<GroundTruthObject> gts;
  std::vector<Detection> dets;
  for (int i = 0; i < 40; ++i) {
    GroundTruthObject g;
    g.box = testing::RandomBox(rng, 30.0, 0.5, 4.0);
    g.class_id = i % 3;
    gts.push_back(g);
    dets.push_back({g.box, rng.Uniform(0.1, 1.0), g.class_id});
  }
  out.Check(std::abs(MapByClass(dets, gts, 0.7).mean_ap - 1.0) <= 1e-12, "self mAP");
  const auto match = MatchIou(dets, gts, 0.7, IouKind::k3d);
  out.Check(std::abs(AveragePrecision(dets, match, 40, ApMode::kInterp40).ap - 1.0) <= 1e-12,
            "self AP interp40");
  const auto e = ComputeTpErrors(TruePositivePairs(dets, gts, match));
  out.Check(e.ate <= 1e-12 && e.ase <= 1e-12 && e.aoe <= 1e-12, "self TP errors");

  // Hand-integrated staircases.
  constexpr auto TP = MatchLabel::kTruePositive;
  constexpr auto FP = MatchLabel::kFalsePositive;
  struct Case {
    std::vector<MatchLabel> labels;
    int num_gt;
    double all_points;
    double interp40;
  };
  const std::vector<Case> cases = {
      {{TP, FP, TP}, 2, 5.0 / 6.0, 5.0 / 6.0},
      {{TP, TP, TP, TP}, 4, 1.0, 1.0},
      {{FP, FP, TP}, 1, 1.0 / 3.0, 1.0 / 3.0},
      {{TP, FP, FP, TP}, 4, 0.375, 0.375},
      {{FP, TP, TP, FP, TP}, 5, 0.4 * 2.0 / 3.0 + 0.12, (16 * 2.0 / 3.0 + 8 * 0.6) / 40},
  };
  for (const auto& c : cases) {
    std::vector<double> scores;
    for (size_t i = 0; i < c.labels.size(); ++i) scores.push_back(1.0 - 0.1 * i);
    out.Check(std::abs(AveragePrecision(scores, c.labels, c.num_gt, ApMode::kAllPoints).ap -
                       c.all_points) <= 1e-9,
              "staircase all-points");
    out.Check(std::abs(AveragePrecision(scores, c.labels, c.num_gt, ApMode::kInterp40).ap -
                       c.interp40) <= 1e-9,
              "staircase interp40");
  }

  // Distance thresholds.
  for (int scene = 0; scene < 20; ++scene) {
    std::vector<GroundTruthObject> scene_gts;
    std::vector<Detection> scene_dets;
    for (int i = 0; i < 20; ++i) {
      GroundTruthObject g;
      g.box = testing::RandomBox(rng, 30.0, 1.0, 4.0);
      scene_gts.push_back(g);
      if (rng.Uniform(0, 1) < 0.8) {
        Box3D b = g.box;
        b.x += rng.Uniform(-2.5, 2.5);
        b.y += rng.Uniform(-2.5, 2.5);
        scene_dets.push_back({b, rng.Uniform(0, 1), 0});
      }
    }
    for (int i = 0; i < 5; ++i) {
      scene_dets.push_back({testing::RandomBox(rng, 30.0, 1.0, 4.0), rng.Uniform(0, 1), 0});
    }
    double previous = -1.0;
    for (double d : {0.5, 1.0, 2.0, 4.0}) {
      const double ap = AveragePrecision(scene_dets, MatchDistance(scene_dets, scene_gts, d),
                                         20, ApMode::kAllPoints)
                            .ap;
      out.Check(ap >= previous, "distance AP not monotone in scene " + std::to_string(scene));
      previous = ap;
    }
  }
  out.detail << "self-eval, 5 staircases, 20 distance scenes";
}

std::string Mutate(const std::string& text, Random& rng) {
  std::string s = text;
  const int edits = rng.UniformInt(1, 6);
  for (int e = 0; e < edits && !s.empty(); ++e) {
    const size_t pos = rng.UniformInt(0, static_cast<int>(s.size()) - 1);
    switch (rng.UniformInt(0, 5)) {
      case 0: s[pos] = static_cast<char>(rng.UniformInt(0, 255)); break;
      case 1: s.erase(pos, rng.UniformInt(1, 8)); break;
      case 2: s.insert(pos, 1, "0123456789.-e+ \n:[]{},\"xnaif"[rng.UniformInt(0, 28)]); break;
      case 3: s.resize(pos); break;
      case 4: s.insert(pos, s.substr(rng.UniformInt(0, static_cast<int>(s.size()) - 1), 12)); break;
      default: s.insert(pos, "1e999"); break;
    }
  }
  return s;
}

void Parsers(Outcome& out) {
  Random rng(9009);
  std::vector<std::string> calibs;
  std::vector<std::string> labels;
  for (int file = 0; file < 50; ++file) {
    KittiCalib calib;
    for (auto& v : calib.p2) v = rng.Uniform(-1, 1) * std::pow(10.0, rng.UniformInt(-4, 3));
    calib.p2[0] = rng.Uniform(500, 900);
    calib.p2[5] = rng.Uniform(500, 900);
    calib.p2[1] = calib.p2[4] = calib.p2[8] = calib.p2[9] = 0;
    calib.p2[10] = 1;
    for (auto& v : calib.r0_rect) v = rng.Uniform(-1, 1);
    for (auto& v : calib.tr_velo_to_cam) v = rng.Uniform(-1, 1);
    const std::string text = SerializeKittiCalib(calib);
    const auto parsed = ParseKittiCalib(text);
    out.Check(parsed.p2 == calib.p2 && parsed.r0_rect == calib.r0_rect &&
                  parsed.tr_velo_to_cam == calib.tr_velo_to_cam,
              "calib round trip");
    out.Check(SerializeKittiCalib(parsed) == text, "calib text identity");
    calibs.push_back(text);

    std::vector<KittiLabel> rows;
    const int count = rng.UniformInt(0, 12);
    for (int r = 0; r < count; ++r) {
      KittiLabel l;
      l.type = rng.UniformInt(0, 5) == 0 ? "DontCare" : (r % 2 ? "Car" : "Pedestrian");
      l.truncation = rng.Uniform(0, 1);
      l.occlusion = rng.UniformInt(0, 3);
      l.alpha = rng.Uniform(-kPi, kPi);
      l.bbox = {rng.Uniform(0, 600), rng.Uniform(0, 200), rng.Uniform(600, 1200),
                rng.Uniform(200, 370)};
      l.h = rng.Uniform(0.5, 3);
      l.w = rng.Uniform(0.5, 3);
      l.l = rng.Uniform(0.5, 6);
      l.location = {rng.Uniform(-20, 20), rng.Uniform(0, 3), rng.Uniform(1, 70)};
      l.rotation_y = rng.Uniform(-kPi, kPi);
      if (rng.UniformInt(0, 1)) l.score = rng.Uniform(0, 1);
      rows.push_back(l);
    }
    const std::string label_text = SerializeKittiLabels(rows);
    const auto parsed_rows = ParseKittiLabels(label_text);
    bool same = parsed_rows.size() == rows.size();
    for (size_t r = 0; same && r < rows.size(); ++r) {
      const auto& a = rows[r];
      const auto& b = parsed_rows[r];
      same = a.type == b.type && a.truncation == b.truncation && a.occlusion == b.occlusion &&
             a.alpha == b.alpha && a.bbox == b.bbox && a.h == b.h && a.w == b.w &&
             a.l == b.l && a.location == b.location && a.rotation_y == b.rotation_y &&
             a.score == b.score;
    }
    out.Check(same, "label round trip");
    out.Check(SerializeKittiLabels(parsed_rows) == label_text, "label text identity");
    labels.push_back(label_text);
  }

  // Malformed documents: only structured errors may escape.
  std::vector<std::pair<std::string, std::function<void(const std::string&)>>> corpora;
  corpora.push_back({calibs[0], [](const std::string& t) { ParseKittiCalib(t); }});
  corpora.push_back({labels[1].empty() ? labels[2] : labels[1],
                     [](const std::string& t) { ParseKittiLabels(t); }});
  corpora.push_back({SerializeConfig(*PresetConfig("kitti")),
                     [](const std::string& t) { ParseConfig(t); }});
  {
    SceneFile scene;
    scene.grid = "scannet";
    SceneView view;
    view.camera.intrinsics = {100, 100, 32, 24};
    view.stub = StubSource{{1, 2, StubPattern::kCoordinate}, 4, 3};
    view.camera.features = MakeFeatures(view.stub->spec, 4, 3);
    scene.views.push_back(view);
    GroundTruthObject g;
    g.box = Box3D(0, 0, 0, 1, 1, 1, 0.2);
    scene.objects.push_back(g);
    corpora.push_back({SerializeScene(scene), [](const std::string& t) { ParseScene(t); }});
    corpora.push_back({SerializeScene(scene), [](const std::string& t) { ParseDetections(t); }});
    corpora.push_back({SerializeScene(scene), [](const std::string& t) { ParseGroundTruth(t); }});
  }
  int structured = 0;
  int accepted = 0;
  const int total = 10000;
  for (int i = 0; i < total; ++i) {
    const auto& [seed_text, parse] = corpora[i % corpora.size()];
    const std::string doc = Mutate(seed_text, rng);
    try {
      parse(doc);
      ++accepted;
    } catch (const Error&) {
      ++structured;
    } catch (const std::exception& e) {
      out.Check(false, std::string("unstructured exception: ") + e.what());
    }
  }
  out.detail << "50 files round-tripped; " << total << " fuzzed docs: " << structured
             << " structured errors, " << accepted << " accepted";
}

void Performance(Outcome& out) {
  Random rng(10010);
  const auto spec = PresetConfig("scannet")->Grid();
  const auto views = testing::RandomViews(rng, spec, 50, 16, 80, 60);
  const auto start = std::chrono::steady_clock::now();
  const auto volumes = ProjectViews(views, spec, 4);
  const auto volume = Aggregate(volumes);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.Check(volume.channels == 16 && volume.spec == spec, "output shape");
  out.Check(seconds < 2.0, "50-view projection + aggregation under 2 s");
  out.detail << "50 views in " << seconds << " s";
}

}  // namespace
}  // namespace voxdet

int main() {
  using voxdet::Criterion;
  using voxdet::Outcome;
  const std::vector<Criterion> criteria = {
      {1, "grid presets", 1, voxdet::GridPresets},
      {2, "projection oracle", 30, voxdet::ProjectionOracle},
      {3, "aggregation", 10, voxdet::AggregationChecks},
      {4, "codec round trips", 10, voxdet::CodecRoundTrips},
      {5, "rotated IoU", 60, voxdet::RotatedIou},
      {6, "losses", 10, voxdet::Losses},
      {7, "NMS", 10, voxdet::Nms},
      {8, "metrics", 10, voxdet::Metrics},
      {9, "parsers", 30, voxdet::Parsers},
      {10, "performance", 2, voxdet::Performance},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(outcome);
    } catch (const std::exception& e) {
      outcome.Check(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = seconds < c.budget_s;
    const bool pass = outcome.pass && in_budget;
    if (!pass) ++failures;
    std::printf("[%s] criterion %2d %-20s %8.3f s (budget %g s)  %s%s\n", pass ? "PASS" : "FAIL",
                c.id, c.name, seconds, c.budget_s, outcome.detail.str().c_str(),
                in_budget ? "" : " over budget");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
