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

#include "softlayer/render.h"

#include <chrono>
#include <string>

#include "softlayer/error.h"

namespace softlayer {
namespace {

double MillisecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

CompositeResult Composite(const RenderedLayer& fg, const RenderedLayer& bg) {
  if (!fg.rgb.SameSize(bg.rgb) || fg.rgb.channels() != bg.rgb.channels()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "foreground and background renders differ in shape");
  }
  const int width = fg.rgb.width();
  const int height = fg.rgb.height();
  CompositeResult result;
  result.image = Image(width, height, fg.rgb.channels());
  const auto fg_alpha = fg.alpha.values();
  const auto fg_cov = fg.coverage.values();
  const auto bg_cov = bg.coverage.values();
  for (int c = 0; c < fg.rgb.channels(); ++c) {
    const auto f = fg.rgb.channel(c);
    const auto b = bg.rgb.channel(c);
    auto out = result.image.channel(c);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const float a = fg_alpha[i] * fg_cov[i];
      out[i] = a * f[i] + (1.0f - a) * b[i];
    }
  }
  for (std::size_t i = 0; i < fg_cov.size(); ++i) {
    if (fg_cov[i] == 0.0f && bg_cov[i] == 0.0f) ++result.uncovered;
  }
  return result;
}

LayeredScene::LayeredScene(const LayerBundle& bundle, int mesh_downsample,
                           RasterOptions options)
    : bundle_(bundle), options_(options) {
  bundle_.Validate();
  const auto start = std::chrono::steady_clock::now();
  fg_mesh_ = BuildMesh(bundle_.fg_disparity, bundle_.intrinsics,
                       bundle_.mapping, mesh_downsample);
  bg_mesh_ = BuildMesh(bundle_.bg_disparity, bundle_.intrinsics,
                       bundle_.mapping, mesh_downsample);
  mesh_build_ms_ = MillisecondsSince(start);
}

CompositeResult LayeredScene::Render(const CameraPose& pose,
                                     FrameTiming* timing) const {
  pose.Validate();
  auto start = std::chrono::steady_clock::now();
  const RenderedLayer fg =
      RenderLayer(fg_mesh_, bundle_.fg_rgb, &bundle_.fg_visibility, pose,
                  bundle_.intrinsics, options_);
  const double fg_ms = MillisecondsSince(start);
  start = std::chrono::steady_clock::now();
  const RenderedLayer bg = RenderLayer(bg_mesh_, bundle_.bg_rgb, nullptr, pose,
                                       bundle_.intrinsics, options_);
  const double bg_ms = MillisecondsSince(start);
  start = std::chrono::steady_clock::now();
  CompositeResult result = Composite(fg, bg);
  if (timing != nullptr) {
    timing->fg_render_ms = fg_ms;
    timing->bg_render_ms = bg_ms;
    timing->composite_ms = MillisecondsSince(start);
  }
  return result;
}

Image SynthesizeView(const LayerBundle& bundle, const CameraPose& pose) {
  const LayeredScene scene(bundle);
  return scene.Render(pose).image;
}

}  // namespace softlayer
