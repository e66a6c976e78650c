// Copyright 2026 The softlayer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "softlayer/bundle.h"

#include <fstream>
#include <string>

#include "json.hpp"
#include "softlayer/error.h"
#include "softlayer/image_io.h"

namespace softlayer {
namespace {

using nlohmann::json;

constexpr char kManifestName[] = "manifest.json";

const json& Field(const json& node, const std::string& key,
                  const std::string& path) {
  if (!node.is_object() || !node.contains(key)) {
    throw Error(ErrorCode::kManifest,
                "manifest.json: missing field '" + path + key + "'");
  }
  return node.at(key);
}

double Number(const json& node, const std::string& key,
              const std::string& path) {
  const json& v = Field(node, key, path);
  if (!v.is_number()) {
    throw Error(ErrorCode::kManifest, "manifest.json: field '" + path + key +
                                          "' must be a number");
  }
  return v.get<double>();
}

int Integer(const json& node, const std::string& key, const std::string& path) {
  const json& v = Field(node, key, path);
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::kManifest, "manifest.json: field '" + path + key +
                                          "' must be an integer");
  }
  return v.get<int>();
}

std::string FileName(const json& node, const std::string& key,
                     const std::string& path) {
  const json& v = Field(node, key, path);
  if (!v.is_string() || v.get<std::string>().empty()) {
    throw Error(ErrorCode::kManifest, "manifest.json: field '" + path + key +
                                          "' must be a file name");
  }
  return v.get<std::string>();
}

void RequireSize(const Image& image, const CameraIntrinsics& intr,
                 const std::string& what) {
  if (image.width() != intr.width || image.height() != intr.height) {
    throw Error(ErrorCode::kDimensionMismatch,
                what + " is " + std::to_string(image.width()) + "x" +
                    std::to_string(image.height()) + ", expected " +
                    std::to_string(intr.width) + "x" +
                    std::to_string(intr.height));
  }
}

}  // namespace

void LayerBundle::Validate() const {
  intrinsics.Validate();
  mapping.Validate();
  RequireSize(fg_rgb, intrinsics, "foreground RGB");
  RequireSize(fg_visibility, intrinsics, "foreground visibility");
  RequireSize(fg_disparity, intrinsics, "foreground disparity");
  RequireSize(bg_rgb, intrinsics, "background RGB");
  RequireSize(bg_disparity, intrinsics, "background disparity");
  if (fg_rgb.channels() != bg_rgb.channels()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "foreground and background channel counts differ");
  }
}

void ExportBundle(const LayerBundle& bundle, const std::filesystem::path& dir) {
  bundle.Validate();
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create '" + dir.string() +
                                    "': " + ec.message());
  }
  const json manifest = {
      {"version", kBundleVersion},
      {"intrinsics",
       {{"fx", bundle.intrinsics.fx},
        {"fy", bundle.intrinsics.fy},
        {"cx", bundle.intrinsics.cx},
        {"cy", bundle.intrinsics.cy},
        {"width", bundle.intrinsics.width},
        {"height", bundle.intrinsics.height}}},
      {"mapping", {{"d_min", bundle.mapping.d_min}}},
      {"layers",
       {{"fg",
         {{"rgb", "fg_rgb.png"},
          {"alpha", "fg_alpha.png"},
          {"disparity", "fg_disp.pfm"}}},
        {"bg", {{"rgb", "bg_rgb.png"}, {"disparity", "bg_disp.pfm"}}}}}};

  SavePng(dir / "fg_rgb.png", bundle.fg_rgb, 16);
  SavePng(dir / "fg_alpha.png", bundle.fg_visibility, 16);
  SavePfm(dir / "fg_disp.pfm", bundle.fg_disparity);
  SavePng(dir / "bg_rgb.png", bundle.bg_rgb, 16);
  SavePfm(dir / "bg_disp.pfm", bundle.bg_disparity);

  std::ofstream out(dir / kManifestName);
  out << manifest.dump(2) << "\n";
  if (!out) {
    throw Error(ErrorCode::kIo,
                "cannot write '" + (dir / kManifestName).string() + "'");
  }
}

LayerBundle LoadBundle(const std::filesystem::path& dir) {
  const std::filesystem::path manifest_path = dir / kManifestName;
  std::ifstream in(manifest_path);
  if (!in) {
    throw Error(ErrorCode::kManifest,
                "cannot read '" + manifest_path.string() + "'");
  }
  json manifest;
  try {
    in >> manifest;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kManifest,
                "manifest.json is not valid JSON: " + std::string(e.what()));
  }
  const int version = Integer(manifest, "version", "");
  if (version != kBundleVersion) {
    throw Error(ErrorCode::kVersion,
                "unsupported bundle version " + std::to_string(version) +
                    " (expected " + std::to_string(kBundleVersion) + ")");
  }

  LayerBundle bundle;
  const json& intr = Field(manifest, "intrinsics", "");
  bundle.intrinsics.fx = Number(intr, "fx", "intrinsics.");
  bundle.intrinsics.fy = Number(intr, "fy", "intrinsics.");
  bundle.intrinsics.cx = Number(intr, "cx", "intrinsics.");
  bundle.intrinsics.cy = Number(intr, "cy", "intrinsics.");
  bundle.intrinsics.width = Integer(intr, "width", "intrinsics.");
  bundle.intrinsics.height = Integer(intr, "height", "intrinsics.");
  bundle.mapping.d_min =
      Number(Field(manifest, "mapping", ""), "d_min", "mapping.");

  const json& layers = Field(manifest, "layers", "");
  const json& fg = Field(layers, "fg", "layers.");
  const json& bg = Field(layers, "bg", "layers.");
  bundle.fg_rgb = LoadImage(dir / FileName(fg, "rgb", "layers.fg."));
  bundle.fg_visibility =
      VisibilityMap(LoadImage(dir / FileName(fg, "alpha", "layers.fg.")));
  bundle.fg_disparity = DisparityMap(
      LoadPfm(dir / FileName(fg, "disparity", "layers.fg.")));
  bundle.bg_rgb = LoadImage(dir / FileName(bg, "rgb", "layers.bg."));
  bundle.bg_disparity = DisparityMap(
      LoadPfm(dir / FileName(bg, "disparity", "layers.bg.")));
  bundle.Validate();
  return bundle;
}

}  // namespace softlayer
