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

#ifndef VOXDET_SCENE_H_
#define VOXDET_SCENE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voxdet/eval.h"
#include "voxdet/geometry.h"
#include "voxdet/losses.h"
#include "voxdet/stub_features.h"
#include "voxdet/suppression.h"
#include "voxdet/voxelgrid.h"

namespace voxdet {

// Feature source of a view when generated by the stub rather than inlined.
struct StubSource {
  StubSpec spec;
  int width = 0;
  int height = 0;
};

struct SceneView {
  CameraView camera;  // features always materialized after loading
  std::optional<StubSource> stub;
  std::string image;  // optional reference; never decoded
};

// Multi-view scene document (JSON, schema version 1). See docs/formats.md.
struct SceneFile {
  std::string grid;  // config preset name or config path
  std::vector<SceneView> views;
  std::vector<GroundTruthObject> objects;
  std::optional<Box3D> layout;
  std::optional<PoseAngles> pose;

  std::vector<CameraView> Cameras() const;
};

// Throws ParseError (with line and JSON field path) on any schema violation,
// including a scene without views.
SceneFile ParseScene(std::string_view json_text);
// Views with a stub source are written as stub descriptors, others inline.
std::string SerializeScene(const SceneFile& scene);
SceneFile LoadScene(const std::string& path);
void WriteScene(const std::string& path, const SceneFile& scene);

// Detections document: {"detections": [{"box": [x, y, z, w, h, l, theta],
// "score": s, "class_id": c}, ...]}. An "objects" array (ground-truth or
// scene document) is also accepted, with score 1 for every entry.
std::vector<Detection> ParseDetections(std::string_view json_text);
std::string SerializeDetections(std::span<const Detection> detections);
std::vector<Detection> LoadDetections(const std::string& path);

// Reads the "objects" array of a scene or ground-truth document.
std::vector<GroundTruthObject> ParseGroundTruth(std::string_view json_text);
std::vector<GroundTruthObject> LoadGroundTruth(const std::string& path);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view contents);

}  // namespace voxdet

#endif  // VOXDET_SCENE_H_
