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

#include "voxdet/commands.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <random>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"
#include "text_util.h"
#include "voxdet/codec.h"
#include "voxdet/config.h"
#include "voxdet/error.h"
#include "voxdet/eval.h"
#include "voxdet/losses.h"
#include "voxdet/render.h"
#include "voxdet/scene.h"
#include "voxdet/suppression.h"
#include "voxdet/volume_io.h"
#include "voxdet/voxelgrid.h"

namespace voxdet {
namespace {

using Json = nlohmann::json;
namespace fs = std::filesystem;

class Stopwatch {
 public:
  explicit Stopwatch(RunManifest& manifest) : manifest_(manifest) {}
  void Lap(const std::string& stage) {
    const auto now = std::chrono::steady_clock::now();
    manifest_.timing_ms.emplace_back(
        stage, std::chrono::duration<double, std::milli>(now - last_).count());
    last_ = now;
  }

 private:
  RunManifest& manifest_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::string PrepareOut(const std::string& out) {
  if (out.empty()) throw ValidationError("--out is required");
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw IoError("cannot create output directory " + out + ": " + ec.message());
  return out;
}

std::string OutPath(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void WriteManifest(const RunManifest& m) {
  Json timing = Json::array();
  for (const auto& [stage, ms] : m.timing_ms) timing.push_back({{"stage", stage}, {"ms", ms}});
  const Json j = {{"command", m.command}, {"config", m.config},   {"inputs", m.inputs},
                  {"seed", m.seed},       {"out", m.out_dir},     {"timing_ms", timing}};
  WriteTextFile(OutPath(m.out_dir, "manifest.json"), j.dump(1) + "\n");
}

// A scene's grid entry may be a preset or a path relative to the scene file.
DatasetConfig ResolveConfig(const std::string& requested, const std::string& scene_grid,
                            const std::string& scene_path) {
  const std::string name = requested.empty() ? scene_grid : requested;
  if (PresetConfig(name) || fs::exists(name)) return LoadConfig(name);
  if (requested.empty()) {
    const fs::path relative = fs::path(scene_path).parent_path() / name;
    if (fs::exists(relative)) return LoadConfig(relative.string());
  }
  throw ValidationError("grid '" + name + "' does not resolve to a preset or config file");
}

Json TpErrorsJson(const std::vector<MatchedPair>& pairs) {
  if (pairs.empty()) return nullptr;
  const TpErrors e = ComputeTpErrors(pairs);
  return {{"ate", e.ate}, {"ase", e.ase}, {"aoe", e.aoe}, {"num_matches", pairs.size()}};
}

Json PrJson(const PrCurve& curve) {
  Json points = Json::array();
  for (const auto& p : curve.points) points.push_back({p.recall, p.precision});
  return points;
}

template <typename T>
std::vector<T> OfClass(const std::vector<T>& items, int cls) {
  std::vector<T> out;
  for (const auto& item : items) {
    if (item.class_id == cls) out.push_back(item);
  }
  return out;
}

// Platform-independent uniform sampling for synthetic scenes.
class SceneRng {
 public:
  explicit SceneRng(uint64_t seed) : engine_(seed) {}
  double Uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  uint64_t Next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Camera at `center` looking along (yaw, pitch); world z up.
CameraExtrinsics LookAlong(const Vec3& center, double yaw, double pitch) {
  const Vec3 forward(std::cos(yaw) * std::cos(pitch), std::sin(yaw) * std::cos(pitch),
                     std::sin(pitch));
  const Vec3 right = forward.cross(Vec3::UnitZ()).normalized();
  const Vec3 down = forward.cross(right);
  CameraExtrinsics e;
  e.rotation.row(0) = right;
  e.rotation.row(1) = down;
  e.rotation.row(2) = forward;
  e.translation = -e.rotation * center;
  return e;
}

}  // namespace

RunManifest RunProject(const ProjectArgs& args) {
  RunManifest m{"project", "", {args.scene}, 0, PrepareOut(args.out), {}};
  Stopwatch clock(m);
  const SceneFile scene = LoadScene(args.scene);
  const DatasetConfig config = ResolveConfig(args.config, scene.grid, args.scene);
  m.config = config.name;
  const VoxelGridSpec spec = config.Grid();
  const auto cameras = scene.Cameras();
  clock.Lap("load");
  const auto volumes = ProjectViews(cameras, spec, args.threads,
                                    args.bilinear ? Sampling::kBilinear : Sampling::kNearest);
  clock.Lap("project");
  const VoxelVolume volume = Aggregate(volumes);
  clock.Lap("aggregate");
  WriteVolume(OutPath(m.out_dir, "volume.vxv"), volume);
  clock.Lap("write");
  WriteManifest(m);
  return m;
}

RunManifest RunTargets(const TargetsArgs& args) {
  RunManifest m{"targets", "", {args.scene}, 0, PrepareOut(args.out), {}};
  Stopwatch clock(m);
  const SceneFile scene = LoadScene(args.scene);
  const DatasetConfig config = ResolveConfig(args.config, scene.grid, args.scene);
  m.config = config.name;
  const VoxelGridSpec spec = config.Grid();
  std::vector<GroundTruthObject> gts;
  for (const auto& g : scene.objects) {
    if (!g.ignore) gts.push_back(g);
  }
  clock.Lap("load");

  Json out = {{"head", args.head}, {"config", config.name}};
  if (args.head == "outdoor") {
    const auto anchors = GenerateAnchors(spec, config.anchor, config.anchor_rotations);
    std::vector<Box3D> boxes;
    for (const auto& g : gts) boxes.push_back(g.box);
    const auto assignment = AssignAnchors(anchors, boxes, config.thresholds);
    clock.Lap("assign");
    int counts[3] = {0, 0, 0};
    Json positives = Json::array();
    for (size_t i = 0; i < anchors.size(); ++i) {
      const auto& a = assignment[i];
      ++counts[static_cast<int>(a.kind)];
      if (a.kind != AnchorAssignment::Kind::kPositive) continue;
      const Box3D& gt = boxes[a.gt_index];
      const auto delta = EncodeOutdoor(gt, anchors[i]).AsArray();
      positives.push_back({{"anchor", i},
                           {"gt", a.gt_index},
                           {"iou", a.max_iou},
                           {"delta", delta},
                           {"dir_positive", DirectionTarget(gt, anchors[i])}});
    }
    out["num_anchors"] = anchors.size();
    out["num_negative"] = counts[0];
    out["num_ignored"] = counts[1];
    out["num_positive"] = counts[2];
    out["positives"] = positives;
  } else if (args.head == "indoor") {
    const auto locations = FcosLocations(spec);
    std::vector<LabeledBox> boxes;
    for (const auto& g : gts) {
      Box3D box = g.box;
      if (config.rotation_free) box.theta = 0.0;
      boxes.push_back({box, g.class_id});
    }
    const auto targets = AssignFcos(boxes, locations, spec);
    clock.Lap("assign");
    Json positives = Json::array();
    for (size_t i = 0; i < targets.size(); ++i) {
      const auto& t = targets[i];
      if (!t.is_positive) continue;
      positives.push_back({{"location", i},
                           {"level", locations[i].level},
                           {"gt", t.gt_index},
                           {"class_id", t.class_id},
                           {"offsets", {t.dx_min, t.dx_max, t.dy_min, t.dy_max, t.dz_min, t.dz_max}},
                           {"theta", t.theta},
                           {"centerness", t.centerness}});
    }
    out["num_locations"] = locations.size();
    out["num_positive"] = positives.size();
    out["num_negative"] = locations.size() - positives.size();
    out["positives"] = positives;
  } else {
    throw ValidationError("--head must be outdoor or indoor");
  }
  WriteTextFile(OutPath(m.out_dir, "targets.json"), out.dump(1) + "\n");
  clock.Lap("write");
  WriteManifest(m);
  return m;
}

RunManifest RunNms(const NmsArgs& args) {
  RunManifest m{"nms", args.config, {args.detections}, 0, PrepareOut(args.out), {}};
  Stopwatch clock(m);
  double threshold = args.threshold;
  if (threshold < 0.0) threshold = LoadConfig(args.config).nms_threshold;
  const auto detections = LoadDetections(args.detections);
  clock.Lap("load");
  const auto kept_indices = RotatedNms(detections, threshold);
  clock.Lap("nms");
  std::vector<Detection> kept;
  for (size_t i : kept_indices) kept.push_back(detections[i]);
  WriteTextFile(OutPath(m.out_dir, "kept.json"), SerializeDetections(kept));
  clock.Lap("write");
  WriteManifest(m);
  return m;
}

RunManifest RunEval(const EvalArgs& args) {
  RunManifest m{"eval", "", {args.detections, args.ground_truth}, 0, PrepareOut(args.out), {}};
  Stopwatch clock(m);
  const auto detections = LoadDetections(args.detections);
  const auto gts = LoadGroundTruth(args.ground_truth);
  clock.Lap("load");
  std::set<int> classes;
  for (const auto& g : gts) {
    if (!g.ignore) classes.insert(g.class_id);
  }
  Json report = {{"protocol", args.protocol}, {"num_detections", detections.size()},
                 {"num_ground_truth", gts.size()}};
  Json per_class = Json::object();
  std::vector<MatchedPair> tp_pairs;
  double ap_sum = 0.0;

  if (args.protocol == "kitti-iou") {
    const double threshold = args.threshold < 0.0 ? 0.7 : args.threshold;
    report["threshold"] = threshold;
    const bool has_difficulty = std::any_of(gts.begin(), gts.end(),
                                            [](const auto& g) { return g.difficulty.has_value(); });
    for (int cls : classes) {
      const auto dets = OfClass(detections, cls);
      const auto class_gts = OfClass(gts, cls);
      Json entry = {{"num_gt", CountEvaluated(class_gts)}, {"num_det", dets.size()}};
      for (auto [kind, key] : {std::pair{IouKind::k3d, "3d"}, std::pair{IouKind::kBev, "bev"}}) {
        const auto match = MatchIou(dets, class_gts, threshold, kind);
        const int n_gt = CountEvaluated(class_gts);
        const auto interp = AveragePrecision(dets, match, n_gt, ApMode::kInterp40);
        const auto all = AveragePrecision(dets, match, n_gt, ApMode::kAllPoints);
        entry[std::string("ap_") + key] = {{"interp40", interp.ap}, {"all_points", all.ap}};
        entry[std::string("pr_") + key] = PrJson(interp);
        if (kind == IouKind::k3d) {
          ap_sum += interp.ap;
          const auto pairs = TruePositivePairs(dets, class_gts, match);
          tp_pairs.insert(tp_pairs.end(), pairs.begin(), pairs.end());
        }
      }
      if (has_difficulty) {
        Json levels = Json::object();
        for (auto [level, name] : {std::pair{Difficulty::kEasy, "easy"},
                                   std::pair{Difficulty::kModerate, "moderate"},
                                   std::pair{Difficulty::kHard, "hard"}}) {
          const auto restricted = RestrictToDifficulty(class_gts, level);
          const int n_gt = CountEvaluated(restricted);
          const auto m3d = MatchIou(dets, restricted, threshold, IouKind::k3d);
          const auto mbev = MatchIou(dets, restricted, threshold, IouKind::kBev);
          levels[name] = {
              {"num_gt", n_gt},
              {"ap_3d", AveragePrecision(dets, m3d, n_gt, ApMode::kInterp40).ap},
              {"ap_bev", AveragePrecision(dets, mbev, n_gt, ApMode::kInterp40).ap}};
        }
        entry["difficulty"] = levels;
      }
      per_class[std::to_string(cls)] = entry;
    }
  } else if (args.protocol == "distance") {
    static constexpr double kThresholds[] = {0.5, 1.0, 2.0, 4.0};
    constexpr double kTpThreshold = 2.0;
    report["thresholds"] = kThresholds;
    report["tp_threshold"] = kTpThreshold;
    for (int cls : classes) {
      const auto dets = OfClass(detections, cls);
      const auto class_gts = OfClass(gts, cls);
      const int n_gt = CountEvaluated(class_gts);
      Json aps = Json::object();
      double class_sum = 0.0;
      for (double d : kThresholds) {
        const auto match = MatchDistance(dets, class_gts, d);
        const double ap = AveragePrecision(dets, match, n_gt, ApMode::kAllPoints).ap;
        aps[internal::FormatDouble(d)] = ap;
        class_sum += ap;
        if (d == kTpThreshold) {
          const auto pairs = TruePositivePairs(dets, class_gts, match);
          tp_pairs.insert(tp_pairs.end(), pairs.begin(), pairs.end());
        }
      }
      const double class_mean = class_sum / std::size(kThresholds);
      ap_sum += class_mean;
      per_class[std::to_string(cls)] = {
          {"num_gt", n_gt}, {"num_det", dets.size()}, {"ap", aps}, {"mean_ap", class_mean}};
    }
  } else if (args.protocol == "indoor-map") {
    const double threshold = args.threshold < 0.0 ? 0.25 : args.threshold;
    report["threshold"] = threshold;
    const ClassApReport map = MapByClass(detections, gts, threshold);
    for (const auto& [cls, curve] : map.per_class) {
      const auto dets = OfClass(detections, cls);
      const auto class_gts = OfClass(gts, cls);
      const auto match = MatchIou(dets, class_gts, threshold, IouKind::k3d);
      const auto pairs = TruePositivePairs(dets, class_gts, match);
      tp_pairs.insert(tp_pairs.end(), pairs.begin(), pairs.end());
      ap_sum += curve.ap;
      per_class[std::to_string(cls)] = {{"num_gt", CountEvaluated(class_gts)},
                                        {"num_det", dets.size()},
                                        {"ap", curve.ap},
                                        {"pr", PrJson(curve)}};
    }
  } else {
    throw ValidationError("--protocol must be kitti-iou, distance or indoor-map");
  }
  report["classes"] = per_class;
  report["mean_ap"] = classes.empty() ? 0.0 : ap_sum / static_cast<double>(classes.size());
  report["tp_errors"] = TpErrorsJson(tp_pairs);
  clock.Lap("evaluate");
  WriteTextFile(OutPath(m.out_dir, "report.json"), report.dump(1) + "\n");
  WriteManifest(m);
  return m;
}

RunManifest RunGradcheck(const GradcheckArgs& args) {
  RunManifest m{"gradcheck", "", {}, args.seed, PrepareOut(args.out), {}};
  Stopwatch clock(m);
  constexpr double kTolerance = 1e-4;
  constexpr double kIouStepTolerance = 0.01;
  Json checks = Json::array();
  bool ok = true;
  for (const auto& r : CheckLossGradients(args.seed, args.points)) {
    const bool pass = r.max_rel_error < kTolerance;
    ok = ok && pass;
    checks.push_back({{"loss", r.name}, {"points", r.points},
                      {"max_rel_error", r.max_rel_error}, {"pass", pass}});
  }
  const double iou = IouLossStepConsistency(args.seed, args.points);
  const bool iou_pass = iou < kIouStepTolerance;
  ok = ok && iou_pass;
  checks.push_back({{"loss", "iou3d_step_consistency"}, {"points", args.points},
                    {"max_rel_error", iou}, {"pass", iou_pass}});
  clock.Lap("check");
  const Json report = {{"tolerance", kTolerance}, {"iou_step_tolerance", kIouStepTolerance},
                       {"checks", checks}, {"all_passed", ok}};
  WriteTextFile(OutPath(m.out_dir, "gradcheck.json"), report.dump(1) + "\n");
  WriteManifest(m);
  return m;
}

RunManifest RunSynth(const SynthArgs& args) {
  RunManifest m{"synth", args.config, {}, args.seed, PrepareOut(args.out), {}};
  Stopwatch clock(m);
  if (args.views < 1) throw ValidationError("--views must be >= 1");
  if (args.objects < 0) throw ValidationError("--objects must be >= 0");
  const DatasetConfig config = LoadConfig(args.config);
  const int stride = config.feature_stride;
  if (args.image_width < stride || args.image_height < stride) {
    throw ValidationError("image size must be at least one feature stride");
  }
  SceneRng rng(args.seed);
  const AxisLimits& g = config.limits;
  const Vec3 mid(0.5 * (g.x_min + g.x_max), 0.5 * (g.y_min + g.y_max),
                 0.5 * (g.z_min + g.z_max));
  const Vec3 half(0.5 * (g.x_max - g.x_min), 0.5 * (g.y_max - g.y_min),
                  0.5 * (g.z_max - g.z_min));

  SceneFile scene;
  scene.grid = config.name;
  for (int i = 0; i < args.views; ++i) {
    SceneView view;
    const Vec3 center = mid + Vec3(rng.Uniform(-0.6, 0.6) * half.x(),
                                   rng.Uniform(-0.6, 0.6) * half.y(),
                                   rng.Uniform(-0.3, 0.3) * half.z());
    const double yaw = rng.Uniform(-std::numbers::pi, std::numbers::pi);
    const double pitch = rng.Uniform(-0.3, 0.1);
    view.camera.extrinsics = LookAlong(center, yaw, pitch);
    const double focal = args.image_width * rng.Uniform(0.7, 1.1);
    view.camera.intrinsics = {focal, focal, 0.5 * args.image_width, 0.5 * args.image_height};
    StubSource stub;
    stub.spec = {rng.Next(), config.feature_channels, StubPattern::kCoordinate};
    stub.width = args.image_width / stride;
    stub.height = args.image_height / stride;
    view.camera.features = MakeFeatures(stub.spec, stub.width, stub.height, stride);
    view.stub = stub;
    scene.views.push_back(std::move(view));
  }
  const bool outdoor = config.voxel_size > 0.2;
  for (int i = 0; i < args.objects; ++i) {
    GroundTruthObject obj;
    double w, h, l;
    if (outdoor) {
      w = config.anchor.w * rng.Uniform(0.85, 1.15);
      h = config.anchor.h * rng.Uniform(0.85, 1.15);
      l = config.anchor.l * rng.Uniform(0.85, 1.15);
    } else {
      w = rng.Uniform(0.3, 1.5);
      h = rng.Uniform(0.3, 1.5);
      l = rng.Uniform(0.3, 1.5);
    }
    h = std::min(h, 0.9 * 2.0 * half.z());
    const double reach = 0.5 * std::hypot(w, l);
    const double x = rng.Uniform(g.x_min + reach, g.x_max - reach);
    const double y = rng.Uniform(g.y_min + reach, g.y_max - reach);
    const double z = rng.Uniform(g.z_min + 0.5 * h, g.z_max - 0.5 * h);
    const double theta =
        config.rotation_free ? 0.0 : rng.Uniform(-std::numbers::pi, std::numbers::pi);
    obj.box = Box3D(x, y, z, w, h, l, theta);
    obj.class_id = static_cast<int>(rng.Next() % 3);
    scene.objects.push_back(obj);
  }
  if (!outdoor) {
    scene.layout = Box3D(mid.x(), mid.y(), mid.z(), 2 * half.y(), 2 * half.z(), 2 * half.x(), 0.0);
    scene.pose = PoseAngles{rng.Uniform(-0.2, 0.2), rng.Uniform(-0.1, 0.1)};
  }
  clock.Lap("generate");
  WriteScene(OutPath(m.out_dir, "scene.json"), scene);
  clock.Lap("write");
  WriteManifest(m);
  return m;
}

RunManifest RunRenderBev(const RenderArgs& args) {
  RunManifest m{"render-bev", "", {}, 0, PrepareOut(args.out), {}};
  Stopwatch clock(m);
  std::vector<Box3D> gt_boxes;
  std::vector<Box3D> det_boxes;
  std::optional<AxisLimits> grid;
  if (!args.scene.empty()) {
    m.inputs.push_back(args.scene);
    const SceneFile scene = LoadScene(args.scene);
    for (const auto& o : scene.objects) gt_boxes.push_back(o.box);
    if (auto preset = PresetConfig(scene.grid)) grid = preset->limits;
  }
  if (!args.ground_truth.empty()) {
    m.inputs.push_back(args.ground_truth);
    for (const auto& o : LoadGroundTruth(args.ground_truth)) gt_boxes.push_back(o.box);
  }
  if (!args.detections.empty()) {
    m.inputs.push_back(args.detections);
    for (const auto& d : LoadDetections(args.detections)) det_boxes.push_back(d.box);
  }
  if (m.inputs.empty()) throw ValidationError("render-bev needs --scene, --gts or --dets");
  clock.Lap("load");
  WriteTextFile(OutPath(m.out_dir, "bev.svg"), RenderBevSvg(gt_boxes, det_boxes, grid));
  clock.Lap("render");
  WriteManifest(m);
  return m;
}

int RunCli(int argc, char** argv) {
  CLI::App app{"voxdet: voxel projection, box codecs, rotated IoU/NMS and detection metrics"};
  app.require_subcommand(1);

  ProjectArgs project;
  auto* cmd_project = app.add_subcommand("project", "Project and aggregate a scene into a voxel volume");
  cmd_project->add_option("--scene", project.scene, "Scene JSON")->required();
  cmd_project->add_option("--config", project.config, "Preset name or config file");
  cmd_project->add_option("--out", project.out, "Output directory")->required();
  cmd_project->add_option("--threads", project.threads, "Worker threads for per-view projection");
  cmd_project->add_flag("--bilinear", project.bilinear, "Bilinear feature sampling");

  TargetsArgs targets;
  auto* cmd_targets = app.add_subcommand("targets", "Assign and encode training targets");
  cmd_targets->add_option("--scene", targets.scene, "Scene JSON")->required();
  cmd_targets->add_option("--config", targets.config, "Preset name or config file");
  cmd_targets->add_option("--head", targets.head, "outdoor or indoor");
  cmd_targets->add_option("--out", targets.out, "Output directory")->required();

  NmsArgs nms;
  auto* cmd_nms = app.add_subcommand("nms", "Rotated NMS over a detections file");
  cmd_nms->add_option("--dets", nms.detections, "Detections JSON")->required();
  cmd_nms->add_option("--threshold", nms.threshold, "IoU threshold (default: config)");
  cmd_nms->add_option("--config", nms.config, "Preset name or config file");
  cmd_nms->add_option("--out", nms.out, "Output directory")->required();

  EvalArgs eval;
  auto* cmd_eval = app.add_subcommand("eval", "Evaluate detections against ground truth");
  cmd_eval->add_option("--dets", eval.detections, "Detections JSON")->required();
  cmd_eval->add_option("--gts", eval.ground_truth, "Ground-truth or scene JSON")->required();
  cmd_eval->add_option("--protocol", eval.protocol, "kitti-iou, distance or indoor-map");
  cmd_eval->add_option("--threshold", eval.threshold, "IoU threshold override");
  cmd_eval->add_option("--out", eval.out, "Output directory")->required();

  GradcheckArgs gradcheck;
  auto* cmd_grad = app.add_subcommand("gradcheck", "Finite-difference check of every loss gradient");
  cmd_grad->add_option("--seed", gradcheck.seed, "Random seed");
  cmd_grad->add_option("--points", gradcheck.points, "Points per loss");
  cmd_grad->add_option("--out", gradcheck.out, "Output directory")->required();

  SynthArgs synth;
  auto* cmd_synth = app.add_subcommand("synth", "Generate a synthetic multi-view scene");
  cmd_synth->add_option("--seed", synth.seed, "Random seed");
  cmd_synth->add_option("--views", synth.views, "Number of views");
  cmd_synth->add_option("--objects", synth.objects, "Number of objects");
  cmd_synth->add_option("--config", synth.config, "Preset name or config file");
  cmd_synth->add_option("--width", synth.image_width, "Image width in pixels");
  cmd_synth->add_option("--height", synth.image_height, "Image height in pixels");
  cmd_synth->add_option("--out", synth.out, "Output directory")->required();

  RenderArgs render;
  auto* cmd_render = app.add_subcommand("render-bev", "Render boxes as a top-down SVG");
  cmd_render->add_option("--scene", render.scene, "Scene JSON");
  cmd_render->add_option("--dets", render.detections, "Detections JSON");
  cmd_render->add_option("--gts", render.ground_truth, "Ground-truth JSON");
  cmd_render->add_option("--out", render.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  const auto report = [](const char* kind, const std::string& message, int line,
                         const std::string& field) {
    Json j = {{"error", kind}, {"message", message}};
    if (line > 0) j["line"] = line;
    if (!field.empty()) j["field"] = field;
    std::cerr << j.dump() << "\n";
  };
  try {
    RunManifest m;
    if (*cmd_project) m = RunProject(project);
    if (*cmd_targets) m = RunTargets(targets);
    if (*cmd_nms) m = RunNms(nms);
    if (*cmd_eval) m = RunEval(eval);
    if (*cmd_grad) m = RunGradcheck(gradcheck);
    if (*cmd_synth) m = RunSynth(synth);
    if (*cmd_render) m = RunRenderBev(render);
    for (const auto& [stage, ms] : m.timing_ms) {
      std::cerr << m.command << ": " << stage << " " << ms << " ms\n";
    }
    return kExitOk;
  } catch (const ParseError& e) {
    report("validation", e.what(), e.line(), e.field());
    return kExitValidation;
  } catch (const Error& e) {
    report(e.kind() == ErrorKind::kIo ? "io" : "validation", e.what(), 0, "");
    return e.kind() == ErrorKind::kIo ? kExitIo : kExitValidation;
  } catch (const std::exception& e) {
    report("validation", e.what(), 0, "");
    return kExitValidation;
  }
}

}  // namespace voxdet
