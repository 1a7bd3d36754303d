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

#include "voxdet/scene.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "voxdet/error.h"

namespace voxdet {
namespace {

using Json = nlohmann::json;

constexpr int kSceneVersion = 1;

[[noreturn]] void Fail(const std::string& path, const std::string& message) {
  throw ParseError(0, path, message);
}

Json ParseJson(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const size_t byte = std::min<size_t>(e.byte, text.size());
    const int line =
        1 + static_cast<int>(std::count(text.begin(), text.begin() + byte, '\n'));
    throw ParseError(line, "", std::string("invalid JSON: ") + e.what());
  } catch (const Json::exception& e) {
    // Lexically valid but unrepresentable, e.g. a number overflowing double.
    throw ParseError(0, "", std::string("invalid JSON: ") + e.what());
  }
}

// Runs `parse`, mapping stray library exceptions to validation errors.
template <typename Fn>
auto Guarded(Fn parse) -> decltype(parse()) {
  try {
    return parse();
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("malformed document: ") + e.what());
  }
}

const Json& Require(const Json& object, const char* key, const std::string& path) {
  if (!object.is_object()) Fail(path, "expected an object");
  const auto it = object.find(key);
  if (it == object.end()) Fail(path + "." + key, "missing required field");
  return *it;
}

double Number(const Json& j, const std::string& path) {
  if (!j.is_number()) Fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) Fail(path, "expected a finite number");
  return v;
}

int64_t Integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) Fail(path, "expected an integer");
  return j.get<int64_t>();
}

int SmallInt(const Json& j, const std::string& path, int64_t lo, int64_t hi) {
  const int64_t v = Integer(j, path);
  if (v < lo || v > hi) {
    Fail(path, "value " + std::to_string(v) + " out of range [" +
                   std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

std::vector<double> Numbers(const Json& j, const std::string& path, size_t n) {
  if (!j.is_array() || j.size() != n) {
    Fail(path, "expected an array of " + std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  for (size_t i = 0; i < n; ++i) {
    out.push_back(Number(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

const Json& Array(const Json& j, const std::string& path) {
  if (!j.is_array()) Fail(path, "expected an array");
  return j;
}

// Runs `check`, converting ValidationError into a ParseError at `path`.
template <typename Fn>
void CheckAt(const std::string& path, Fn check) {
  try {
    check();
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& e) {
    Fail(path, e.what());
  }
}

Box3D BoxFrom(const Json& j, const std::string& path) {
  const auto v = Numbers(j, path, 7);
  const Box3D box(v[0], v[1], v[2], v[3], v[4], v[5], v[6]);
  CheckAt(path, [&] { box.Validate(); });
  return box;
}

Json BoxTo(const Box3D& b) { return Json::array({b.x, b.y, b.z, b.w, b.h, b.l, b.theta}); }

std::optional<Difficulty> DifficultyFrom(const Json& j, const std::string& path) {
  if (!j.is_string()) Fail(path, "expected a string");
  const auto s = j.get<std::string>();
  if (s == "easy") return Difficulty::kEasy;
  if (s == "moderate") return Difficulty::kModerate;
  if (s == "hard") return Difficulty::kHard;
  Fail(path, "expected easy, moderate or hard");
}

const char* DifficultyName(Difficulty d) {
  switch (d) {
    case Difficulty::kEasy:
      return "easy";
    case Difficulty::kModerate:
      return "moderate";
    case Difficulty::kHard:
      return "hard";
  }
  return "hard";
}

GroundTruthObject ObjectFrom(const Json& j, const std::string& path) {
  GroundTruthObject g;
  g.box = BoxFrom(Require(j, "box", path), path + ".box");
  if (j.contains("class_id")) {
    g.class_id = SmallInt(j["class_id"], path + ".class_id", 0, 1 << 20);
  }
  if (j.contains("ignore")) {
    if (!j["ignore"].is_boolean()) Fail(path + ".ignore", "expected a boolean");
    g.ignore = j["ignore"].get<bool>();
  }
  if (j.contains("difficulty")) {
    g.difficulty = DifficultyFrom(j["difficulty"], path + ".difficulty");
  }
  return g;
}

Json ObjectTo(const GroundTruthObject& g) {
  Json j = {{"box", BoxTo(g.box)}, {"class_id", g.class_id}};
  if (g.ignore) j["ignore"] = true;
  if (g.difficulty) j["difficulty"] = DifficultyName(*g.difficulty);
  return j;
}

CameraIntrinsics IntrinsicsFrom(const Json& j, const std::string& path) {
  CameraIntrinsics k;
  k.fx = Number(Require(j, "fx", path), path + ".fx");
  k.fy = Number(Require(j, "fy", path), path + ".fy");
  k.cx = Number(Require(j, "cx", path), path + ".cx");
  k.cy = Number(Require(j, "cy", path), path + ".cy");
  CheckAt(path, [&] { k.Validate(); });
  return k;
}

CameraExtrinsics ExtrinsicsFrom(const Json& j, const std::string& path) {
  CameraExtrinsics e;
  const auto r = Numbers(Require(j, "rotation", path), path + ".rotation", 9);
  const auto t = Numbers(Require(j, "translation", path), path + ".translation", 3);
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) e.rotation(row, col) = r[row * 3 + col];
    e.translation[row] = t[row];
  }
  CheckAt(path, [&] { e.Validate(); });
  return e;
}

FeatureMap2D InlineFeaturesFrom(const Json& j, const std::string& path) {
  FeatureMap2D f;
  f.width = SmallInt(Require(j, "width", path), path + ".width", 1, 1 << 16);
  f.height = SmallInt(Require(j, "height", path), path + ".height", 1, 1 << 16);
  f.channels = SmallInt(Require(j, "channels", path), path + ".channels", 1, 1 << 16);
  f.stride = j.contains("stride") ? SmallInt(j["stride"], path + ".stride", 1, 1 << 10) : 4;
  const Json& data = Array(Require(j, "data", path), path + ".data");
  const size_t expected = static_cast<size_t>(f.width) * f.height * f.channels;
  if (data.size() != expected) {
    Fail(path + ".data", "expected " + std::to_string(expected) + " values, found " +
                             std::to_string(data.size()));
  }
  f.data.reserve(expected);
  for (size_t i = 0; i < data.size(); ++i) {
    if (!data[i].is_number()) Fail(path + ".data[" + std::to_string(i) + "]", "expected a number");
    f.data.push_back(data[i].get<float>());
  }
  CheckAt(path, [&] { f.Validate(); });
  return f;
}

StubSource StubFrom(const Json& j, const std::string& path) {
  StubSource s;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
      Fail(path + ".seed", "expected an unsigned integer");
    }
    if (!j["seed"].is_number_unsigned() && j["seed"].get<int64_t>() < 0) {
      Fail(path + ".seed", "expected an unsigned integer");
    }
    s.spec.seed = j["seed"].get<uint64_t>();
  }
  s.spec.channels = SmallInt(Require(j, "channels", path), path + ".channels", 1, 1 << 16);
  if (j.contains("pattern")) {
    if (!j["pattern"].is_string()) Fail(path + ".pattern", "expected a string");
    CheckAt(path + ".pattern", [&] { s.spec.pattern = ParsePattern(j["pattern"].get<std::string>()); });
  }
  s.width = SmallInt(Require(j, "width", path), path + ".width", 1, 1 << 16);
  s.height = SmallInt(Require(j, "height", path), path + ".height", 1, 1 << 16);
  return s;
}

SceneView ViewFrom(const Json& j, const std::string& path) {
  if (!j.is_object()) Fail(path, "expected an object");
  SceneView view;
  view.camera.intrinsics = IntrinsicsFrom(Require(j, "intrinsics", path), path + ".intrinsics");
  view.camera.extrinsics = ExtrinsicsFrom(Require(j, "extrinsics", path), path + ".extrinsics");
  if (j.contains("image")) {
    if (!j["image"].is_string()) Fail(path + ".image", "expected a string");
    view.image = j["image"].get<std::string>();
  }
  const bool has_features = j.contains("features");
  const bool has_stub = j.contains("stub");
  if (has_features == has_stub) {
    Fail(path, "exactly one of 'features' or 'stub' is required (images are not decoded)");
  }
  if (has_features) {
    view.camera.features = InlineFeaturesFrom(j["features"], path + ".features");
  } else {
    const std::string stub_path = path + ".stub";
    StubSource stub = StubFrom(j["stub"], stub_path);
    const int stride = j["stub"].contains("stride")
                           ? SmallInt(j["stub"]["stride"], stub_path + ".stride", 1, 1 << 10)
                           : 4;
    view.camera.features = MakeFeatures(stub.spec, stub.width, stub.height, stride);
    view.stub = stub;
  }
  return view;
}

Json ViewTo(const SceneView& v) {
  const CameraView& c = v.camera;
  Json rotation = Json::array();
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) rotation.push_back(c.extrinsics.rotation(row, col));
  }
  Json j = {
      {"intrinsics",
       {{"fx", c.intrinsics.fx}, {"fy", c.intrinsics.fy}, {"cx", c.intrinsics.cx}, {"cy", c.intrinsics.cy}}},
      {"extrinsics",
       {{"rotation", rotation},
        {"translation", {c.extrinsics.translation.x(), c.extrinsics.translation.y(),
                         c.extrinsics.translation.z()}}}},
  };
  if (!v.image.empty()) j["image"] = v.image;
  if (v.stub) {
    j["stub"] = {{"seed", v.stub->spec.seed},
                 {"channels", v.stub->spec.channels},
                 {"pattern", PatternName(v.stub->spec.pattern)},
                 {"width", v.stub->width},
                 {"height", v.stub->height},
                 {"stride", c.features.stride}};
  } else {
    j["features"] = {{"width", c.features.width},
                     {"height", c.features.height},
                     {"channels", c.features.channels},
                     {"stride", c.features.stride},
                     {"data", c.features.data}};
  }
  return j;
}

std::vector<GroundTruthObject> ObjectsFrom(const Json& root) {
  std::vector<GroundTruthObject> objects;
  if (!root.contains("objects")) return objects;
  const Json& list = Array(root["objects"], "objects");
  for (size_t i = 0; i < list.size(); ++i) {
    objects.push_back(ObjectFrom(list[i], "objects[" + std::to_string(i) + "]"));
  }
  return objects;
}

void CheckVersion(const Json& root) {
  if (!root.is_object()) Fail("", "document must be a JSON object");
  if (root.contains("version") &&
      SmallInt(root["version"], "version", 0, 1 << 20) != kSceneVersion) {
    Fail("version", "unsupported version");
  }
}

}  // namespace

std::vector<CameraView> SceneFile::Cameras() const {
  std::vector<CameraView> cameras;
  cameras.reserve(views.size());
  for (const auto& v : views) cameras.push_back(v.camera);
  return cameras;
}

static SceneFile ParseSceneUnguarded(std::string_view json_text) {
  const Json root = ParseJson(json_text);
  CheckVersion(root);
  SceneFile scene;
  const Json& grid = Require(root, "grid", "");
  if (!grid.is_string() || grid.get<std::string>().empty()) {
    Fail("grid", "expected a config preset name or path");
  }
  scene.grid = grid.get<std::string>();
  const Json& views = Array(Require(root, "views", ""), "views");
  if (views.empty()) Fail("views", "a scene needs at least one view");
  for (size_t i = 0; i < views.size(); ++i) {
    scene.views.push_back(ViewFrom(views[i], "views[" + std::to_string(i) + "]"));
  }
  scene.objects = ObjectsFrom(root);
  if (root.contains("layout")) scene.layout = BoxFrom(root["layout"], "layout");
  if (root.contains("pose")) {
    const Json& pose = root["pose"];
    scene.pose = PoseAngles{Number(Require(pose, "pitch", "pose"), "pose.pitch"),
                            Number(Require(pose, "roll", "pose"), "pose.roll")};
  }
  return scene;
}

std::string SerializeScene(const SceneFile& scene) {
  Json root = {{"version", kSceneVersion}, {"grid", scene.grid}};
  root["views"] = Json::array();
  for (const auto& v : scene.views) root["views"].push_back(ViewTo(v));
  root["objects"] = Json::array();
  for (const auto& g : scene.objects) root["objects"].push_back(ObjectTo(g));
  if (scene.layout) root["layout"] = BoxTo(*scene.layout);
  if (scene.pose) root["pose"] = {{"pitch", scene.pose->pitch}, {"roll", scene.pose->roll}};
  return root.dump(1) + "\n";
}

SceneFile LoadScene(const std::string& path) { return ParseScene(ReadTextFile(path)); }

void WriteScene(const std::string& path, const SceneFile& scene) {
  WriteTextFile(path, SerializeScene(scene));
}

static std::vector<Detection> ParseDetectionsUnguarded(std::string_view json_text) {
  const Json root = ParseJson(json_text);
  CheckVersion(root);
  std::vector<Detection> detections;
  if (root.contains("detections")) {
    const Json& list = Array(root["detections"], "detections");
    for (size_t i = 0; i < list.size(); ++i) {
      const std::string path = "detections[" + std::to_string(i) + "]";
      Detection d;
      d.box = BoxFrom(Require(list[i], "box", path), path + ".box");
      d.score = Number(Require(list[i], "score", path), path + ".score");
      if (list[i].contains("class_id")) {
        d.class_id = SmallInt(list[i]["class_id"], path + ".class_id", 0, 1 << 20);
      }
      CheckAt(path, [&] { d.Validate(); });
      detections.push_back(d);
    }
    return detections;
  }
  if (root.contains("objects")) {
    for (const auto& g : ObjectsFrom(root)) {
      if (g.ignore) continue;
      detections.push_back({g.box, 1.0, g.class_id});
    }
    return detections;
  }
  Fail("detections", "missing 'detections' or 'objects' array");
}

std::string SerializeDetections(std::span<const Detection> detections) {
  Json root = {{"version", kSceneVersion}, {"detections", Json::array()}};
  for (const auto& d : detections) {
    root["detections"].push_back(
        {{"box", BoxTo(d.box)}, {"score", d.score}, {"class_id", d.class_id}});
  }
  return root.dump(1) + "\n";
}

std::vector<Detection> LoadDetections(const std::string& path) {
  return ParseDetections(ReadTextFile(path));
}

static std::vector<GroundTruthObject> ParseGroundTruthUnguarded(std::string_view json_text) {
  const Json root = ParseJson(json_text);
  CheckVersion(root);
  if (!root.contains("objects")) Fail("objects", "missing required field");
  return ObjectsFrom(root);
}

std::vector<GroundTruthObject> LoadGroundTruth(const std::string& path) {
  return ParseGroundTruth(ReadTextFile(path));
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::string& path, std::string_view contents) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!file) throw IoError("failed writing " + path);
}

SceneFile ParseScene(std::string_view json_text) {
  return Guarded([&] { return ParseSceneUnguarded(json_text); });
}

std::vector<Detection> ParseDetections(std::string_view json_text) {
  return Guarded([&] { return ParseDetectionsUnguarded(json_text); });
}

std::vector<GroundTruthObject> ParseGroundTruth(std::string_view json_text) {
  return Guarded([&] { return ParseGroundTruthUnguarded(json_text); });
}

}  // namespace voxdet
