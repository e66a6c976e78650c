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

#ifndef SOFTLAYER_PIPELINE_H_
#define SOFTLAYER_PIPELINE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "softlayer/bundle.h"
#include "softlayer/geometry.h"
#include "softlayer/inpainting.h"
#include "softlayer/layering.h"

namespace softlayer {

struct PipelineConfig {
  std::filesystem::path image;
  std::filesystem::path disparity;
  std::optional<std::filesystem::path> matte;
  std::optional<std::filesystem::path> external_rgb;
  std::optional<std::filesystem::path> external_disparity;
  bool normalize_disparity = false;

  float blur_sigma = 1.5f;
  int pool_radius = 2;
  VisibilityParams visibility;
  DisocclusionParams disocclusion;
  InpaintParams inpaint;
  DepthMapping mapping;
  int matte_dilation_radius = 5;
  // Focal length in pixels; 0 selects 0.8 * max(width, height).
  double focal_length = 0.0;

  CameraPathParams path;
  int mesh_downsample = 1;
  std::filesystem::path output_dir = "bundle";

  // Parameter invariants only; file existence is checked when loading.
  void Validate() const;
};

// Keys mirror the field names; absent keys keep the values in `base`.
PipelineConfig ConfigFromJson(const nlohmann::json& json,
                              PipelineConfig base = {});
nlohmann::json ConfigToJson(const PipelineConfig& config);

struct StageTimings {
  double load_ms = 0.0;
  double soft_layering_ms = 0.0;
  double inpainting_ms = 0.0;
};

struct ProcessResult {
  LayerBundle bundle;
  VisibilityMap depth_visibility;  // before matte fusion
  SoftMask disocclusion;
  std::optional<SoftMask> occlusion;  // only computed with a matte
  BinaryMask inpaint_mask;
  bool inpaint_converged = true;
  int inpaint_iterations = 0;
  StageTimings timings;
};

// In-memory pipeline on already loaded inputs. `matte` may be empty.
ProcessResult ProcessImages(const Image& rgb, const DisparityMap& disparity,
                            const std::optional<Raster>& matte,
                            const PipelineConfig& config);

// Loads the configured files, then runs ProcessImages. Component failures are
// rethrown with the stage name prefixed.
ProcessResult Process(const PipelineConfig& config);

// Writes the intermediate maps next to a bundle for inspection.
void DumpIntermediates(const ProcessResult& result,
                       const std::filesystem::path& dir);

struct RenderReport {
  std::vector<std::filesystem::path> frames;
  double mesh_build_ms = 0.0;
  double fg_render_ms = 0.0;  // totals over all frames
  double bg_render_ms = 0.0;
  double composite_ms = 0.0;
  double write_ms = 0.0;
  std::size_t max_uncovered = 0;

  nlohmann::json ToJson() const;
};

// One PNG per pose, named frame_0000.png, frame_0001.png, ...
RenderReport RenderPath(const LayerBundle& bundle,
                        const std::vector<CameraPose>& path,
                        const std::filesystem::path& out_dir,
                        int mesh_downsample = 1);

}  // namespace softlayer

#endif  // SOFTLAYER_PIPELINE_H_
