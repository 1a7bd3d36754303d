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

#ifndef VOXDET_COMMANDS_H_
#define VOXDET_COMMANDS_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace voxdet {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;

// Record written as manifest.json next to each command's outputs.
struct RunManifest {
  std::string command;
  std::string config;
  std::vector<std::string> inputs;
  uint64_t seed = 0;
  std::string out_dir;
  std::vector<std::pair<std::string, double>> timing_ms;  // stage order
};

struct ProjectArgs {
  std::string scene;
  std::string config;  // empty: the scene's grid entry
  std::string out;
  int threads = 1;
  bool bilinear = false;
};

struct TargetsArgs {
  std::string scene;
  std::string config;
  std::string head = "outdoor";  // outdoor | indoor
  std::string out;
};

struct NmsArgs {
  std::string detections;
  double threshold = -1.0;  // < 0: take nms_threshold from config
  std::string config = "scannet";
  std::string out;
};

struct EvalArgs {
  std::string detections;
  std::string ground_truth;
  std::string protocol = "kitti-iou";  // kitti-iou | distance | indoor-map
  double threshold = -1.0;              // < 0: protocol default
  std::string out;
};

struct GradcheckArgs {
  uint64_t seed = 0;
  int points = 100;
  std::string out;
};

struct SynthArgs {
  uint64_t seed = 0;
  int views = 1;
  int objects = 3;
  std::string config = "scannet";
  int image_width = 320;
  int image_height = 240;
  std::string out;
};

struct RenderArgs {
  std::string scene;
  std::string detections;
  std::string ground_truth;
  std::string out;
};

// Each command writes its outputs and manifest.json into `out` (created if
// needed) and returns the manifest. Failures throw voxdet::Error.
//   project     volume.vxv
//   targets     targets.json
//   nms         kept.json
//   eval        report.json
//   gradcheck   gradcheck.json
//   synth       scene.json
//   render-bev  bev.svg
RunManifest RunProject(const ProjectArgs& args);
RunManifest RunTargets(const TargetsArgs& args);
RunManifest RunNms(const NmsArgs& args);
RunManifest RunEval(const EvalArgs& args);
RunManifest RunGradcheck(const GradcheckArgs& args);
RunManifest RunSynth(const SynthArgs& args);
RunManifest RunRenderBev(const RenderArgs& args);

// Parses argv and dispatches; returns the process exit code. Diagnostics go
// to stderr as one JSON object per failure.
int RunCli(int argc, char** argv);

}  // namespace voxdet

#endif  // VOXDET_COMMANDS_H_
