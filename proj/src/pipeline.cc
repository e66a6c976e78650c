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

#include "softlayer/pipeline.h"

#include <chrono>
#include <cstdio>
#include <set>
#include <string>

#include "softlayer/error.h"
#include "softlayer/image_io.h"
#include "softlayer/render.h"

namespace softlayer {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double MillisecondsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

// Runs `fn`, prefixing any library error with `stage`.
template <typename Fn>
auto Stage(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    RethrowWithStage(stage, e);
  }
}

template <typename T>
void Read(const json& node, const char* key, T& out) {
  if (!node.contains(key)) return;
  try {
    out = node.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("config field '") + key + "': " + e.what());
  }
}

void ReadPath(const json& node, const char* key,
              std::optional<std::filesystem::path>& out) {
  if (!node.contains(key)) return;
  if (node.at(key).is_null()) {
    out.reset();
    return;
  }
  std::string value;
  Read(node, key, value);
  out = value;
}

void RejectUnknownKeys(const json& node, const std::set<std::string>& known,
                       const std::string& where) {
  if (!node.is_object()) {
    throw Error(ErrorCode::kInvalidArgument,
                "config " + where + " must be a JSON object");
  }
  for (const auto& [key, value] : node.items()) {
    if (!known.contains(key)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown config key '" + where + key + "'");
    }
  }
}

Image DropAlpha(const Image& rgb) {
  if (rgb.channels() != 4) return rgb;
  Image out(rgb.width(), rgb.height(), 3);
  for (int c = 0; c < 3; ++c) {
    std::copy(rgb.channel(c).begin(), rgb.channel(c).end(),
              out.channel(c).begin());
  }
  return out;
}

}  // namespace

void PipelineConfig::Validate() const {
  if (!(blur_sigma >= 0.0f) || pool_radius < 0 || matte_dilation_radius < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "blur sigma and radii must be non-negative");
  }
  if (focal_length < 0.0 || mesh_downsample < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "focal length must be >= 0 and mesh downsample >= 1");
  }
  if (external_rgb.has_value() != external_disparity.has_value()) {
    throw Error(ErrorCode::kInvalidArgument,
                "external inpaint needs both an RGB and a disparity file");
  }
  visibility.Validate();
  disocclusion.Validate();
  inpaint.Validate();
  mapping.Validate();
}

PipelineConfig ConfigFromJson(const json& j, PipelineConfig base) {
  RejectUnknownKeys(j,
                    {"image", "disparity", "matte", "external_rgb",
                     "external_disparity", "normalize_disparity", "blur_sigma",
                     "pool_radius", "visibility", "disocclusion", "inpaint",
                     "mapping", "matte_dilation_radius", "focal_length", "path",
                     "mesh_downsample", "output_dir"},
                    "");
  PipelineConfig c = std::move(base);
  std::string s;
  if (j.contains("image")) {
    Read(j, "image", s);
    c.image = s;
  }
  if (j.contains("disparity")) {
    Read(j, "disparity", s);
    c.disparity = s;
  }
  if (j.contains("output_dir")) {
    Read(j, "output_dir", s);
    c.output_dir = s;
  }
  ReadPath(j, "matte", c.matte);
  ReadPath(j, "external_rgb", c.external_rgb);
  ReadPath(j, "external_disparity", c.external_disparity);
  Read(j, "normalize_disparity", c.normalize_disparity);
  Read(j, "blur_sigma", c.blur_sigma);
  Read(j, "pool_radius", c.pool_radius);
  Read(j, "matte_dilation_radius", c.matte_dilation_radius);
  Read(j, "focal_length", c.focal_length);
  Read(j, "mesh_downsample", c.mesh_downsample);
  if (j.contains("visibility")) {
    const json& v = j.at("visibility");
    RejectUnknownKeys(v, {"beta"}, "visibility.");
    Read(v, "beta", c.visibility.beta);
  }
  if (j.contains("disocclusion")) {
    const json& v = j.at("disocclusion");
    RejectUnknownKeys(v, {"rho", "gamma", "neighborhood", "downsample_factor"},
                      "disocclusion.");
    Read(v, "rho", c.disocclusion.rho);
    Read(v, "gamma", c.disocclusion.gamma);
    Read(v, "neighborhood", c.disocclusion.neighborhood);
    Read(v, "downsample_factor", c.disocclusion.downsample_factor);
  }
  if (j.contains("inpaint")) {
    const json& v = j.at("inpaint");
    RejectUnknownKeys(v,
                      {"mask_threshold", "max_iterations", "convergence_tol",
                       "depth_guidance_strength", "background_quantile"},
                      "inpaint.");
    Read(v, "mask_threshold", c.inpaint.mask_threshold);
    Read(v, "max_iterations", c.inpaint.max_iterations);
    Read(v, "convergence_tol", c.inpaint.convergence_tol);
    Read(v, "depth_guidance_strength", c.inpaint.depth_guidance_strength);
    Read(v, "background_quantile", c.inpaint.background_quantile);
  }
  if (j.contains("mapping")) {
    const json& v = j.at("mapping");
    RejectUnknownKeys(v, {"d_min"}, "mapping.");
    Read(v, "d_min", c.mapping.d_min);
  }
  if (j.contains("path")) {
    const json& v = j.at("path");
    RejectUnknownKeys(v, {"radius", "depth_offset", "frame_count", "focus_depth"},
                      "path.");
    Read(v, "radius", c.path.radius);
    Read(v, "depth_offset", c.path.depth_offset);
    Read(v, "frame_count", c.path.frame_count);
    Read(v, "focus_depth", c.path.focus_depth);
  }
  return c;
}

json ConfigToJson(const PipelineConfig& c) {
  auto opt = [](const std::optional<std::filesystem::path>& p) -> json {
    return p ? json(p->string()) : json(nullptr);
  };
  return {
      {"image", c.image.string()},
      {"disparity", c.disparity.string()},
      {"matte", opt(c.matte)},
      {"external_rgb", opt(c.external_rgb)},
      {"external_disparity", opt(c.external_disparity)},
      {"normalize_disparity", c.normalize_disparity},
      {"blur_sigma", c.blur_sigma},
      {"pool_radius", c.pool_radius},
      {"visibility", {{"beta", c.visibility.beta}}},
      {"disocclusion",
       {{"rho", c.disocclusion.rho},
        {"gamma", c.disocclusion.gamma},
        {"neighborhood", c.disocclusion.neighborhood},
        {"downsample_factor", c.disocclusion.downsample_factor}}},
      {"inpaint",
       {{"mask_threshold", c.inpaint.mask_threshold},
        {"max_iterations", c.inpaint.max_iterations},
        {"convergence_tol", c.inpaint.convergence_tol},
        {"depth_guidance_strength", c.inpaint.depth_guidance_strength},
        {"background_quantile", c.inpaint.background_quantile}}},
      {"mapping", {{"d_min", c.mapping.d_min}}},
      {"matte_dilation_radius", c.matte_dilation_radius},
      {"focal_length", c.focal_length},
      {"path",
       {{"radius", c.path.radius},
        {"depth_offset", c.path.depth_offset},
        {"frame_count", c.path.frame_count},
        {"focus_depth", c.path.focus_depth}}},
      {"mesh_downsample", c.mesh_downsample},
      {"output_dir", c.output_dir.string()},
  };
}

ProcessResult ProcessImages(const Image& rgb_in, const DisparityMap& disparity,
                            const std::optional<Raster>& matte,
                            const PipelineConfig& config) {
  Stage("config", [&] {
    config.Validate();
    return 0;
  });
  if (!rgb_in.SameSize(disparity) || (matte && !matte->SameSize(rgb_in))) {
    throw Error(ErrorCode::kDimensionMismatch,
                "load: image, disparity and matte must share dimensions");
  }
  const Image rgb = DropAlpha(rgb_in);
  ProcessResult result;

  auto start = Clock::now();
  const DisparityMap processed = Stage("preprocess", [&] {
    return PreprocessDisparity(disparity, config.blur_sigma,
                               config.pool_radius);
  });
  result.depth_visibility = Stage("soft_layering", [&] {
    return ComputeVisibility(processed, config.visibility);
  });
  VisibilityMap visibility = result.depth_visibility;
  if (matte) {
    result.occlusion = Stage("soft_layering", [&] {
      return OcclusionMap(processed, config.disocclusion);
    });
    visibility = Stage("matte_fusion", [&] {
      return FuseMatteVisibility(
          visibility, MatteInput{*matte, config.matte_dilation_radius},
          *result.occlusion);
    });
  }
  result.disocclusion = Stage("soft_layering", [&] {
    return DisocclusionMap(processed, config.disocclusion);
  });
  result.timings.soft_layering_ms = MillisecondsSince(start);

  start = Clock::now();
  result.inpaint_mask = Stage("inpainting", [&] {
    return BinarizeMask(result.disocclusion, config.inpaint.mask_threshold);
  });
  const InpaintedBackground background = Stage("inpainting", [&] {
    if (config.external_rgb) {
      return InjectExternalInpaint(*config.external_rgb,
                                   *config.external_disparity,
                                   result.inpaint_mask, rgb, processed);
    }
    return InpaintRgbd(rgb, processed, result.inpaint_mask, config.inpaint);
  });
  result.inpaint_converged = background.converged;
  result.inpaint_iterations = background.iterations;
  result.timings.inpainting_ms = MillisecondsSince(start);

  LayerBundle& bundle = result.bundle;
  bundle.fg_rgb = rgb;
  bundle.fg_visibility = std::move(visibility);
  bundle.fg_disparity = processed;
  bundle.bg_rgb = background.rgb;
  bundle.bg_disparity = background.disparity;
  bundle.intrinsics = CameraIntrinsics::Default(rgb.width(), rgb.height());
  if (config.focal_length > 0.0) {
    bundle.intrinsics.fx = bundle.intrinsics.fy = config.focal_length;
  }
  bundle.mapping = config.mapping;
  Stage("bundle", [&] {
    bundle.Validate();
    return 0;
  });
  return result;
}

ProcessResult Process(const PipelineConfig& config) {
  const auto start = Clock::now();
  const Image rgb = Stage("load", [&] { return LoadImage(config.image); });
  const DisparityMap disparity = Stage("load", [&] {
    return LoadDisparity(config.disparity, config.normalize_disparity);
  });
  std::optional<Raster> matte;
  if (config.matte) {
    const Image raw = Stage("load", [&] { return LoadImage(*config.matte); });
    Raster m(raw.width(), raw.height());
    std::copy(raw.channel(0).begin(), raw.channel(0).end(),
              m.values().begin());
    matte = std::move(m);
  }
  const double load_ms = MillisecondsSince(start);
  ProcessResult result = ProcessImages(rgb, disparity, matte, config);
  result.timings.load_ms = load_ms;
  return result;
}

void DumpIntermediates(const ProcessResult& result,
                       const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  SavePng(dir / "visibility_depth.png", result.depth_visibility, 16);
  SavePng(dir / "visibility.png", result.bundle.fg_visibility, 16);
  SavePng(dir / "disocclusion.png", result.disocclusion, 16);
  SavePfm(dir / "disocclusion.pfm", result.disocclusion);
  if (result.occlusion) {
    SavePng(dir / "occlusion.png", *result.occlusion, 16);
    SavePfm(dir / "occlusion.pfm", *result.occlusion);
  }
  SaveMaskPng(dir / "inpaint_mask.png", result.inpaint_mask);
}

json RenderReport::ToJson() const {
  json names = json::array();
  for (const auto& f : frames) names.push_back(f.filename().string());
  return {{"frames", names},
          {"frame_count", frames.size()},
          {"max_uncovered_pixels", max_uncovered},
          {"timing_ms",
           {{"mesh_build", mesh_build_ms},
            {"fg_render", fg_render_ms},
            {"bg_render", bg_render_ms},
            {"composite", composite_ms},
            {"write", write_ms}}}};
}

RenderReport RenderPath(const LayerBundle& bundle,
                        const std::vector<CameraPose>& path,
                        const std::filesystem::path& out_dir,
                        int mesh_downsample) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create '" + out_dir.string() +
                                    "': " + ec.message());
  }
  const LayeredScene scene(bundle, mesh_downsample);
  RenderReport report;
  report.mesh_build_ms = scene.mesh_build_ms();
  for (std::size_t k = 0; k < path.size(); ++k) {
    FrameTiming timing;
    const CompositeResult frame = scene.Render(path[k], &timing);
    report.fg_render_ms += timing.fg_render_ms;
    report.bg_render_ms += timing.bg_render_ms;
    report.composite_ms += timing.composite_ms;
    report.max_uncovered = std::max(report.max_uncovered, frame.uncovered);

    const auto start = Clock::now();
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%04zu.png", k);
    const std::filesystem::path file = out_dir / name;
    SavePng(file, frame.image, 8);
    report.write_ms += MillisecondsSince(start);
    report.frames.push_back(file);
  }
  return report;
}

}  // namespace softlayer
