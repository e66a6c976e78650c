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

// softlayer: layered 3D photos from an image plus disparity.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "softlayer/bundle.h"
#include "softlayer/error.h"
#include "softlayer/filters.h"
#include "softlayer/image_io.h"
#include "softlayer/inpainting.h"
#include "softlayer/masks.h"
#include "softlayer/metrics.h"
#include "softlayer/pipeline.h"

namespace {

using nlohmann::json;
using softlayer::PipelineConfig;

template <typename T>
void Override(const std::optional<T>& flag, T& target) {
  if (flag) target = *flag;
}

void WriteJson(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  out << j.dump(2) << "\n";
  if (!out) {
    throw softlayer::Error(softlayer::ErrorCode::kIo,
                           "cannot write '" + path.string() + "'");
  }
}

json ReadJson(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw softlayer::Error(softlayer::ErrorCode::kIo,
                           "cannot read config '" + path.string() + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw softlayer::Error(softlayer::ErrorCode::kInvalidArgument,
                           "config '" + path.string() + "': " + e.what());
  }
}

// Flags shared by commands that run layering and inpainting.
struct LayeringFlags {
  std::optional<bool> normalize;
  std::optional<float> blur_sigma;
  std::optional<int> pool_radius;
  std::optional<double> beta, rho, gamma;
  std::optional<int> neighborhood, downsample;
  std::optional<double> mask_threshold, tol, lambda, quantile;
  std::optional<int> max_iterations;

  void Register(CLI::App* app) {
    app->add_flag("--normalize", normalize, "Min-max normalize the disparity");
    app->add_option("--blur-sigma", blur_sigma, "Disparity blur sigma (1.5)");
    app->add_option("--pool-radius", pool_radius, "Disparity max-pool radius (2)");
    app->add_option("--beta", beta, "Visibility gradient penalty (100)");
    app->add_option("--rho", rho, "Disparity allowance per pixel (0.005)");
    app->add_option("--gamma", gamma, "Disocclusion tanh steepness (5)");
    app->add_option("--neighborhood", neighborhood, "Scanline half-extent m (64)");
    app->add_option("--downsample", downsample, "Disocclusion downsample factor (1)");
    app->add_option("--mask-threshold", mask_threshold, "Inpaint mask threshold (0.5)");
    app->add_option("--max-iterations", max_iterations, "Relaxation sweeps per level (5000)");
    app->add_option("--tol", tol, "Convergence tolerance (1e-5)");
    app->add_option("--lambda", lambda, "Depth guidance strength (50)");
    app->add_option("--quantile", quantile, "Background anchor quantile (0.3)");
  }

  void Apply(PipelineConfig& c) const {
    Override(normalize, c.normalize_disparity);
    Override(blur_sigma, c.blur_sigma);
    Override(pool_radius, c.pool_radius);
    Override(beta, c.visibility.beta);
    Override(rho, c.disocclusion.rho);
    Override(gamma, c.disocclusion.gamma);
    Override(neighborhood, c.disocclusion.neighborhood);
    Override(downsample, c.disocclusion.downsample_factor);
    Override(mask_threshold, c.inpaint.mask_threshold);
    Override(max_iterations, c.inpaint.max_iterations);
    Override(tol, c.inpaint.convergence_tol);
    Override(lambda, c.inpaint.depth_guidance_strength);
    Override(quantile, c.inpaint.background_quantile);
  }
};

int RunProcess(const std::optional<std::string>& config_path,
               const std::optional<std::string>& image,
               const std::optional<std::string>& disparity,
               const std::optional<std::string>& matte,
               const std::optional<std::string>& external_rgb,
               const std::optional<std::string>& external_disparity,
               const LayeringFlags& flags, const std::optional<double>& d_min,
               const std::optional<int>& matte_dilation,
               const std::optional<double>& focal,
               const std::optional<std::string>& out,
               const std::optional<std::string>& dump_dir,
               bool print_config) {
  PipelineConfig config;
  if (config_path) config = softlayer::ConfigFromJson(ReadJson(*config_path));
  if (image) config.image = *image;
  if (disparity) config.disparity = *disparity;
  if (matte) config.matte = *matte;
  if (external_rgb) config.external_rgb = *external_rgb;
  if (external_disparity) config.external_disparity = *external_disparity;
  if (out) config.output_dir = *out;
  flags.Apply(config);
  Override(d_min, config.mapping.d_min);
  Override(matte_dilation, config.matte_dilation_radius);
  Override(focal, config.focal_length);
  if (print_config) {
    std::cout << softlayer::ConfigToJson(config).dump(2) << "\n";
    return 0;
  }
  if (config.image.empty() || config.disparity.empty()) {
    std::cerr << "process: --image and --disparity are required\n";
    return 2;
  }

  const softlayer::ProcessResult result = softlayer::Process(config);
  softlayer::ExportBundle(result.bundle, config.output_dir);
  if (dump_dir) softlayer::DumpIntermediates(result, *dump_dir);

  const auto& t = result.timings;
  const json summary = {
      {"bundle", config.output_dir.string()},
      {"width", result.bundle.intrinsics.width},
      {"height", result.bundle.intrinsics.height},
      {"inpaint_mask_pixels", result.inpaint_mask.CountSet()},
      {"inpaint_converged", result.inpaint_converged},
      {"inpaint_iterations", result.inpaint_iterations},
      {"timing_ms",
       {{"load", t.load_ms},
        {"soft_layering", t.soft_layering_ms},
        {"inpainting", t.inpainting_ms}}}};
  std::cout << summary.dump(2) << "\n";
  if (!result.inpaint_converged) {
    std::cerr << "warning: inpainting stopped at the iteration limit\n";
  }
  return 0;
}

double AutoFocusDepth(const softlayer::LayerBundle& bundle) {
  std::vector<float> d(bundle.fg_disparity.values().begin(),
                       bundle.fg_disparity.values().end());
  std::nth_element(d.begin(), d.begin() + d.size() / 2, d.end());
  return bundle.mapping.DepthFromDisparity(d[d.size() / 2]);
}

softlayer::LayerBundle ResampleBundle(const softlayer::LayerBundle& in,
                                      int width, int height) {
  using softlayer::ResizeBilinear;
  softlayer::LayerBundle out = in;
  out.fg_rgb = ResizeBilinear(in.fg_rgb, width, height);
  out.fg_visibility = ResizeBilinear(in.fg_visibility, width, height);
  out.fg_disparity = ResizeBilinear(in.fg_disparity, width, height);
  out.bg_rgb = ResizeBilinear(in.bg_rgb, width, height);
  out.bg_disparity = ResizeBilinear(in.bg_disparity, width, height);
  const double sx = static_cast<double>(width) / in.intrinsics.width;
  const double sy = static_cast<double>(height) / in.intrinsics.height;
  out.intrinsics.fx = in.intrinsics.fx * sx;
  out.intrinsics.fy = in.intrinsics.fy * sy;
  out.intrinsics.cx = (in.intrinsics.cx + 0.5) * sx - 0.5;
  out.intrinsics.cy = (in.intrinsics.cy + 0.5) * sy - 0.5;
  out.intrinsics.width = width;
  out.intrinsics.height = height;
  return out;
}

json InspectBundle(const softlayer::LayerBundle& b) {
  auto range = [](std::span<const float> v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return json{{"min", *lo}, {"max", *hi}};
  };
  double visibility_sum = 0.0;
  for (float v : b.fg_visibility.values()) visibility_sum += v;
  std::size_t changed = 0;
  const auto fg = b.fg_disparity.values();
  const auto bg = b.bg_disparity.values();
  for (std::size_t i = 0; i < fg.size(); ++i) {
    if (fg[i] != bg[i]) ++changed;
  }
  return {{"version", softlayer::kBundleVersion},
          {"width", b.intrinsics.width},
          {"height", b.intrinsics.height},
          {"intrinsics",
           {{"fx", b.intrinsics.fx},
            {"fy", b.intrinsics.fy},
            {"cx", b.intrinsics.cx},
            {"cy", b.intrinsics.cy}}},
          {"mapping", {{"d_min", b.mapping.d_min}}},
          {"fg_disparity", range(fg)},
          {"bg_disparity", range(bg)},
          {"mean_visibility", visibility_sum / static_cast<double>(fg.size())},
          {"inpainted_pixels", changed}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Layered 3D photos: soft layering, depth-aware inpainting and "
               "novel-view rendering"};
  app.require_subcommand(1);

  // process
  auto* process = app.add_subcommand("process", "Image + disparity -> layer bundle");
  std::optional<std::string> p_config, p_image, p_disparity, p_matte, p_ext_rgb,
      p_ext_disp, p_out, p_dump;
  std::optional<double> p_dmin, p_focal;
  std::optional<int> p_matte_dilation;
  bool p_print_config = false;
  LayeringFlags p_flags;
  process->add_option("--config", p_config, "JSON config; flags override it");
  process->add_option("--image", p_image, "Input PNG");
  process->add_option("--disparity", p_disparity, "Disparity PFM or 16-bit PNG");
  process->add_option("--matte", p_matte, "Optional foreground alpha matte PNG");
  process->add_option("--external-rgb", p_ext_rgb, "Externally inpainted RGB PNG");
  process->add_option("--external-disparity", p_ext_disp,
                      "Externally inpainted disparity");
  process->add_option("-o,--out", p_out, "Bundle output directory");
  process->add_option("--dump-intermediates", p_dump,
                      "Write visibility/disocclusion/mask maps here");
  process->add_option("--d-min", p_dmin, "Minimum disparity for depth (0.01)");
  process->add_option("--matte-dilation", p_matte_dilation, "Matte dilation radius (5)");
  process->add_option("--focal", p_focal, "Focal length in pixels (default 0.8*max(W,H))");
  process->add_flag("--print-config", p_print_config, "Print the merged config and exit");
  p_flags.Register(process);

  // render
  auto* render = app.add_subcommand("render", "Bundle + camera path -> frames");
  std::string r_bundle, r_out = "frames";
  softlayer::CameraPathParams r_path;
  std::optional<double> r_focus;
  int r_downsample = 1;
  bool r_identity = false;
  render->add_option("--bundle", r_bundle, "Bundle directory")->required();
  render->add_option("-o,--out", r_out, "Frame output directory");
  render->add_option("--frames", r_path.frame_count, "Frames on the circular path");
  render->add_option("--radius", r_path.radius, "Path radius, world units");
  render->add_option("--depth-offset", r_path.depth_offset, "Forward excursion, world units");
  render->add_option("--focus-depth", r_focus,
                     "Look-at depth (default: depth of the median disparity)");
  render->add_option("--mesh-downsample", r_downsample, "Mesh grid step");
  render->add_flag("--identity", r_identity, "Render only the input viewpoint");

  // masks
  auto* masks = app.add_subcommand("masks", "Generate inpainting training masks");
  std::vector<std::string> m_images, m_disparities;
  std::string m_out = "masks";
  int m_count = 16;
  softlayer::MaskDatasetOptions m_spec;
  bool m_normalize = false;
  masks->add_option("--image", m_images, "Input PNG(s)")->required();
  masks->add_option("--disparity", m_disparities, "Disparity file(s), one per image")
      ->required();
  masks->add_option("-o,--out", m_out, "Output directory");
  masks->add_option("--count", m_count, "Number of samples");
  masks->add_option("--seed", m_spec.seed, "Base seed; sample i uses seed + i");
  masks->add_option("--mix-ratio", m_spec.mix_ratio, "Fraction of occlusion masks");
  masks->add_option("--threshold", m_spec.mask_threshold, "Occlusion mask threshold");
  masks->add_option("--rho", m_spec.occlusion_params.rho, "Occlusion rho");
  masks->add_option("--gamma", m_spec.occlusion_params.gamma, "Occlusion gamma");
  masks->add_option("--neighborhood", m_spec.occlusion_params.neighborhood,
                    "Occlusion scanline half-extent");
  masks->add_flag("--normalize", m_normalize, "Min-max normalize disparities");

  // inpaint
  auto* inpaint = app.add_subcommand("inpaint", "Standalone depth-aware RGBD inpainting");
  std::string i_image, i_disparity, i_out = "inpainted";
  std::optional<std::string> i_mask;
  LayeringFlags i_flags;
  inpaint->add_option("--image", i_image, "Input PNG")->required();
  inpaint->add_option("--disparity", i_disparity, "Disparity file")->required();
  inpaint->add_option("--mask", i_mask,
                      "Mask PNG (nonzero = fill); default: thresholded disocclusion");
  inpaint->add_option("-o,--out", i_out, "Output directory");
  i_flags.Register(inpaint);

  // metrics
  auto* metrics = app.add_subcommand("metrics", "PSNR/SSIM between two frame directories");
  std::string x_pred, x_gt;
  std::optional<std::string> x_out;
  double x_crop = softlayer::kDefaultBorderCrop;
  metrics->add_option("--pred", x_pred, "Predicted frames")->required();
  metrics->add_option("--gt", x_gt, "Ground-truth frames")->required();
  metrics->add_option("--crop", x_crop, "Border fraction ignored per side (0.2)");
  metrics->add_option("-o,--out", x_out, "Write the JSON report here");

  // export
  auto* exporter = app.add_subcommand("export", "Re-export a bundle, optionally resized");
  std::string e_bundle, e_out;
  std::optional<int> e_width, e_height;
  exporter->add_option("--bundle", e_bundle, "Source bundle")->required();
  exporter->add_option("-o,--out", e_out, "Destination bundle")->required();
  exporter->add_option("--width", e_width, "Target width");
  exporter->add_option("--height", e_height, "Target height");

  // inspect
  auto* inspect = app.add_subcommand("inspect", "Summarize a bundle");
  std::string n_bundle;
  inspect->add_option("--bundle", n_bundle, "Bundle directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*process) {
      return RunProcess(p_config, p_image, p_disparity, p_matte, p_ext_rgb,
                        p_ext_disp, p_flags, p_dmin, p_matte_dilation, p_focal,
                        p_out, p_dump, p_print_config);
    }
    if (*render) {
      const softlayer::LayerBundle bundle = softlayer::LoadBundle(r_bundle);
      r_path.focus_depth = r_focus ? *r_focus : AutoFocusDepth(bundle);
      const std::vector<softlayer::CameraPose> poses =
          r_identity ? std::vector<softlayer::CameraPose>{softlayer::CameraPose::Identity()}
                     : softlayer::CircularPath(r_path);
      const softlayer::RenderReport report =
          softlayer::RenderPath(bundle, poses, r_out, r_downsample);
      WriteJson(std::filesystem::path(r_out) / "timing.json", report.ToJson());
      std::cout << report.ToJson().dump(2) << "\n";
      return 0;
    }
    if (*masks) {
      if (m_images.size() != m_disparities.size()) {
        std::cerr << "masks: need one --disparity per --image\n";
        return 2;
      }
      std::vector<softlayer::Image> images;
      std::vector<softlayer::DisparityMap> disparities;
      for (std::size_t i = 0; i < m_images.size(); ++i) {
        images.push_back(softlayer::LoadImage(m_images[i]));
        disparities.push_back(softlayer::LoadDisparity(m_disparities[i], m_normalize));
      }
      std::filesystem::create_directories(m_out);
      std::ofstream index(std::filesystem::path(m_out) / "masks.jsonl");
      for (int k = 0; k < m_count; ++k) {
        const std::size_t src = static_cast<std::size_t>(k) % images.size();
        const std::uint64_t seed = m_spec.seed + static_cast<std::uint64_t>(k);
        softlayer::MaskRng rng(seed);
        const softlayer::TrainingMask sample =
            softlayer::GenerateTrainingMask(disparities[src], m_spec, rng);
        char id[32];
        std::snprintf(id, sizeof(id), "%06d", k);
        const std::filesystem::path base = std::filesystem::path(m_out) / id;
        softlayer::SavePng(base.string() + "_image.png", images[src], 8);
        softlayer::SavePfm(base.string() + "_disparity.pfm", disparities[src]);
        softlayer::SaveMaskPng(base.string() + "_mask.png", sample.mask);
        index << json{{"id", id},
                      {"mask_kind", softlayer::MaskKindName(sample.kind)},
                      {"seed", seed}}
                     .dump()
              << "\n";
      }
      return 0;
    }
    if (*inpaint) {
      PipelineConfig config;
      i_flags.Apply(config);
      config.Validate();
      const softlayer::Image rgb = softlayer::LoadImage(i_image);
      const softlayer::DisparityMap disparity =
          softlayer::LoadDisparity(i_disparity, config.normalize_disparity);
      softlayer::BinaryMask mask;
      if (i_mask) {
        mask = softlayer::LoadMaskPng(*i_mask);
      } else {
        const auto processed = softlayer::PreprocessDisparity(
            disparity, config.blur_sigma, config.pool_radius);
        mask = softlayer::BinarizeMask(
            softlayer::DisocclusionMap(processed, config.disocclusion),
            config.inpaint.mask_threshold);
      }
      const softlayer::InpaintedBackground bg =
          softlayer::InpaintRgbd(rgb, disparity, mask, config.inpaint);
      std::filesystem::create_directories(i_out);
      const std::filesystem::path dir(i_out);
      softlayer::SavePng(dir / "bg_rgb.png", bg.rgb, 16);
      softlayer::SavePfm(dir / "bg_disp.pfm", bg.disparity);
      softlayer::SaveMaskPng(dir / "mask.png", mask);
      std::cout << json{{"converged", bg.converged},
                        {"iterations", bg.iterations},
                        {"background_disparity", bg.background_disparity},
                        {"mask_pixels", mask.CountSet()}}
                       .dump(2)
                << "\n";
      if (!bg.converged) {
        std::cerr << "warning: inpainting stopped at the iteration limit\n";
      }
      return 0;
    }
    if (*metrics) {
      const softlayer::MetricsReport report =
          softlayer::EvaluateDirectories(x_pred, x_gt, x_crop);
      if (x_out) WriteJson(*x_out, report.ToJson());
      std::cout << report.ToJson().dump(2) << "\n";
      return 0;
    }
    if (*exporter) {
      softlayer::LayerBundle bundle = softlayer::LoadBundle(e_bundle);
      if (e_width || e_height) {
        const double aspect = static_cast<double>(bundle.intrinsics.height) /
                              bundle.intrinsics.width;
        const int w = e_width ? *e_width
                              : static_cast<int>(std::lround(*e_height / aspect));
        const int h = e_height ? *e_height
                               : static_cast<int>(std::lround(*e_width * aspect));
        bundle = ResampleBundle(bundle, w, h);
      }
      softlayer::ExportBundle(bundle, e_out);
      return 0;
    }
    if (*inspect) {
      std::cout << InspectBundle(softlayer::LoadBundle(n_bundle)).dump(2) << "\n";
      return 0;
    }
  } catch (const softlayer::Error& e) {
    std::cerr << "error [" << softlayer::ErrorCodeName(e.code())
              << "]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
