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

#ifndef SOFTLAYER_BUNDLE_H_
#define SOFTLAYER_BUNDLE_H_

#include <filesystem>

#include "softlayer/geometry.h"
#include "softlayer/image.h"

namespace softlayer {

inline constexpr int kBundleVersion = 1;

// Two-layer scene: an RGBDA foreground and an inpainted RGBD background.
struct LayerBundle {
  Image fg_rgb;
  VisibilityMap fg_visibility;
  DisparityMap fg_disparity;
  Image bg_rgb;
  DisparityMap bg_disparity;
  CameraIntrinsics intrinsics;
  DepthMapping mapping;

  void Validate() const;
};

// Writes manifest.json, fg_rgb.png, fg_alpha.png, fg_disp.pfm, bg_rgb.png and
// bg_disp.pfm into `dir` (created if missing). PNGs are 16-bit.
void ExportBundle(const LayerBundle& bundle, const std::filesystem::path& dir);

// Throws kManifest naming the missing or malformed field, kVersion for an
// unsupported version.
LayerBundle LoadBundle(const std::filesystem::path& dir);

}  // namespace softlayer

#endif  // SOFTLAYER_BUNDLE_H_
