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

#include "voxdet/config.h"

#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "text_util.h"
#include "voxdet/error.h"

namespace voxdet {
namespace {

using internal::FormatDouble;
using internal::ParseDouble;

constexpr double kHalfPi = 0.5 * std::numbers::pi;

DatasetConfig Outdoor(std::string name, AxisLimits limits) {
  DatasetConfig c;
  c.name = std::move(name);
  c.limits = limits;
  c.voxel_size = 0.32;
  c.anchor = AnchorPrior{1.6, 3.9, 1.56, -1.78};
  c.anchor_rotations = {0.0, kHalfPi};
  c.thresholds = {0.6, 0.45};
  c.nms_threshold = 0.1;
  return c;
}

DatasetConfig Indoor(std::string name, AxisLimits limits, bool rotation_free) {
  DatasetConfig c;
  c.name = std::move(name);
  c.limits = limits;
  c.voxel_size = 0.16;
  c.anchor = AnchorPrior{0.8, 0.8, 0.8, 0.0};
  c.anchor_rotations = {0.0};
  c.nms_threshold = 0.25;
  c.rotation_free = rotation_free;
  return c;
}

bool ParseBool(std::string_view token, int line, const std::string& key) {
  if (token == "true") return true;
  if (token == "false") return false;
  throw ParseError(line, key, "expected true or false");
}

int ParsePositiveInt(std::string_view token, int line, const std::string& key) {
  const int v = internal::ParseInt(token, line, key);
  if (v < 1) throw ParseError(line, key, "must be >= 1");
  return v;
}

using Setter = std::function<void(DatasetConfig&, std::string_view, int)>;

const std::map<std::string, Setter, std::less<>>& Setters() {
  static const auto* setters = [] {
    auto* m = new std::map<std::string, Setter, std::less<>>;
    const auto number = [](double DatasetConfig::*field, const char* key) -> Setter {
      return [field, key](DatasetConfig& c, std::string_view v, int line) {
        c.*field = ParseDouble(v, line, key);
      };
    };
    const auto limit = [](double AxisLimits::*field, const char* key) -> Setter {
      return [field, key](DatasetConfig& c, std::string_view v, int line) {
        c.limits.*field = ParseDouble(v, line, key);
      };
    };
    const auto anchor = [](double AnchorPrior::*field, const char* key) -> Setter {
      return [field, key](DatasetConfig& c, std::string_view v, int line) {
        c.anchor.*field = ParseDouble(v, line, key);
      };
    };
    (*m)["name"] = [](DatasetConfig& c, std::string_view v, int line) {
      if (v.empty()) throw ParseError(line, "name", "must not be empty");
      c.name = std::string(v);
    };
    (*m)["x_min"] = limit(&AxisLimits::x_min, "x_min");
    (*m)["x_max"] = limit(&AxisLimits::x_max, "x_max");
    (*m)["y_min"] = limit(&AxisLimits::y_min, "y_min");
    (*m)["y_max"] = limit(&AxisLimits::y_max, "y_max");
    (*m)["z_min"] = limit(&AxisLimits::z_min, "z_min");
    (*m)["z_max"] = limit(&AxisLimits::z_max, "z_max");
    (*m)["voxel_size"] = number(&DatasetConfig::voxel_size, "voxel_size");
    (*m)["nms_threshold"] = number(&DatasetConfig::nms_threshold, "nms_threshold");
    (*m)["anchor_w"] = anchor(&AnchorPrior::w, "anchor_w");
    (*m)["anchor_l"] = anchor(&AnchorPrior::l, "anchor_l");
    (*m)["anchor_h"] = anchor(&AnchorPrior::h, "anchor_h");
    (*m)["anchor_z"] = anchor(&AnchorPrior::z, "anchor_z");
    (*m)["anchor_rotations"] = [](DatasetConfig& c, std::string_view v, int line) {
      c.anchor_rotations.clear();
      std::string list(v);
      for (char& ch : list) {
        if (ch == ',') ch = ' ';
      }
      for (auto token : internal::SplitWhitespace(list)) {
        c.anchor_rotations.push_back(ParseDouble(token, line, "anchor_rotations"));
      }
      if (c.anchor_rotations.empty()) {
        throw ParseError(line, "anchor_rotations", "needs at least one angle");
      }
    };
    (*m)["pos_iou"] = [](DatasetConfig& c, std::string_view v, int line) {
      c.thresholds.pos_iou = ParseDouble(v, line, "pos_iou");
    };
    (*m)["neg_iou"] = [](DatasetConfig& c, std::string_view v, int line) {
      c.thresholds.neg_iou = ParseDouble(v, line, "neg_iou");
    };
    (*m)["rotation_free"] = [](DatasetConfig& c, std::string_view v, int line) {
      c.rotation_free = ParseBool(v, line, "rotation_free");
    };
    (*m)["feature_stride"] = [](DatasetConfig& c, std::string_view v, int line) {
      c.feature_stride = ParsePositiveInt(v, line, "feature_stride");
    };
    (*m)["feature_channels"] = [](DatasetConfig& c, std::string_view v, int line) {
      c.feature_channels = ParsePositiveInt(v, line, "feature_channels");
    };
    return m;
  }();
  return *setters;
}

}  // namespace

std::vector<std::string> PresetNames() {
  return {"kitti", "nuscenes", "sunrgbd", "scannet"};
}

std::optional<DatasetConfig> PresetConfig(std::string_view name) {
  if (name == "kitti") {
    return Outdoor("kitti", {-39.68, 39.68, 0.0, 69.12, -2.92, 0.92});
  }
  if (name == "nuscenes") {
    return Outdoor("nuscenes", {-49.92, 49.92, -49.92, 49.92, -2.92, 0.92});
  }
  if (name == "sunrgbd") {
    return Indoor("sunrgbd", {-3.2, 3.2, 0.0, 6.4, -2.28, 0.28}, false);
  }
  if (name == "scannet") {
    return Indoor("scannet", {-3.2, 3.2, -3.2, 3.2, -1.28, 1.28}, true);
  }
  return std::nullopt;
}

DatasetConfig ParseConfig(std::string_view text) {
  static const std::set<std::string, std::less<>> kRequired = {
      "name", "x_min", "x_max", "y_min", "y_max", "z_min", "z_max", "voxel_size"};
  DatasetConfig config;
  config.anchor_rotations = {0.0, kHalfPi};
  std::set<std::string, std::less<>> seen;
  const auto lines = internal::SplitLines(text);
  int last_line = 0;
  for (size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    std::string_view line = lines[i];
    if (const size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = internal::Trim(line);
    if (line.empty()) continue;
    last_line = line_no;
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, "", "expected 'key = value'");
    }
    const std::string key(internal::Trim(line.substr(0, eq)));
    const std::string_view value = internal::Trim(line.substr(eq + 1));
    const auto setter = Setters().find(key);
    if (setter == Setters().end()) throw ParseError(line_no, key, "unknown key");
    if (!seen.insert(key).second) throw ParseError(line_no, key, "duplicate key");
    setter->second(config, value, line_no);
  }
  for (const auto& key : kRequired) {
    if (!seen.count(key)) throw ParseError(0, key, "missing required key");
  }
  try {
    config.Grid();
    if (!(config.anchor.w > 0 && config.anchor.l > 0 && config.anchor.h > 0)) {
      throw ValidationError("anchor extents must be positive");
    }
    if (!(0.0 <= config.thresholds.neg_iou &&
          config.thresholds.neg_iou <= config.thresholds.pos_iou &&
          config.thresholds.pos_iou <= 1.0)) {
      throw ValidationError("need 0 <= neg_iou <= pos_iou <= 1");
    }
    if (!(config.nms_threshold >= 0.0 && config.nms_threshold <= 1.0)) {
      throw ValidationError("nms_threshold must lie in [0, 1]");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ParseError(last_line, "config", e.what());
  }
  return config;
}

std::string SerializeConfig(const DatasetConfig& c) {
  std::ostringstream out;
  out << "# voxdet dataset config v1\n";
  out << "name = " << c.name << "\n";
  out << "x_min = " << FormatDouble(c.limits.x_min) << "  # m\n";
  out << "x_max = " << FormatDouble(c.limits.x_max) << "  # m\n";
  out << "y_min = " << FormatDouble(c.limits.y_min) << "  # m\n";
  out << "y_max = " << FormatDouble(c.limits.y_max) << "  # m\n";
  out << "z_min = " << FormatDouble(c.limits.z_min) << "  # m\n";
  out << "z_max = " << FormatDouble(c.limits.z_max) << "  # m\n";
  out << "voxel_size = " << FormatDouble(c.voxel_size) << "  # m\n";
  out << "anchor_w = " << FormatDouble(c.anchor.w) << "  # m\n";
  out << "anchor_l = " << FormatDouble(c.anchor.l) << "  # m\n";
  out << "anchor_h = " << FormatDouble(c.anchor.h) << "  # m\n";
  out << "anchor_z = " << FormatDouble(c.anchor.z) << "  # m\n";
  out << "anchor_rotations = ";
  for (size_t i = 0; i < c.anchor_rotations.size(); ++i) {
    out << (i ? ", " : "") << FormatDouble(c.anchor_rotations[i]);
  }
  out << "  # rad\n";
  out << "pos_iou = " << FormatDouble(c.thresholds.pos_iou) << "\n";
  out << "neg_iou = " << FormatDouble(c.thresholds.neg_iou) << "\n";
  out << "nms_threshold = " << FormatDouble(c.nms_threshold) << "\n";
  out << "rotation_free = " << (c.rotation_free ? "true" : "false") << "\n";
  out << "feature_stride = " << c.feature_stride << "\n";
  out << "feature_channels = " << c.feature_channels << "\n";
  return out.str();
}

DatasetConfig LoadConfig(const std::string& preset_or_path) {
  if (auto preset = PresetConfig(preset_or_path)) return *preset;
  std::ifstream file(preset_or_path);
  if (!file) {
    throw IoError("config '" + preset_or_path +
                  "' is neither a preset nor a readable file");
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  return ParseConfig(buffer.str());
}

}  // namespace voxdet
