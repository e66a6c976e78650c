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

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "softlayer/bundle.h"
#include "softlayer/error.h"
#include "softlayer/filters.h"
#include "softlayer/image_io.h"
#include "softlayer/inpainting.h"
#include "softlayer/layering.h"
#include "softlayer/masks.h"
#include "softlayer/metrics.h"
#include "softlayer/pipeline.h"
#include "softlayer/reference.h"
#include "softlayer/render.h"
#include "test_support.h"

namespace softlayer {
namespace {

using Clock = std::chrono::steady_clock;
namespace t = softlayer::testing;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

double MaxAbsDiff(const Image& a, const Image& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    worst = std::max(worst, std::abs(double{a.data()[i]} - b.data()[i]));
  }
  return worst;
}

Outcome OracleEquivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const DisparityMap d = t::RandomDisparity(128, 128, rng);
    DisocclusionParams p;
    p.neighborhood = 32;
    p.rho = 0.002 + 0.02 * u(rng);
    p.gamma = 1.0 + 9.0 * u(rng);
    worst = std::max(worst, MaxAbsDiff(DisocclusionMap(d, p),
                                       reference::DisocclusionMapNaive(d, p)));
    worst = std::max(worst, MaxAbsDiff(OcclusionMap(d, p),
                                       reference::OcclusionMapNaive(d, p)));
  }
  const double secs = Seconds(start);
  return {worst <= 1e-6 && secs < 30.0,
          Fmt("max |fast - naive| = %.3g over 50 fields, %.2f s", worst, secs)};
}

Outcome HalfPlaneLayering() {
  const int w = 96, h = 48, edge = 48;
  const DisparityMap d = t::HalfPlane(w, h, edge, 0.8f, 0.2f);
  DisocclusionParams p;
  p.rho = 0.01;
  p.gamma = 5.0;
  p.neighborhood = 32;
  const SoftMask s = DisocclusionMap(d, p);
  const SoftMask o = OcclusionMap(d, p);
  const double expected = std::tanh(2.95);
  double err = 0.0, low_side = 0.0, mirror_err = 0.0, mirror_other = 0.0;
  for (int y = 0; y < h; ++y) {
    err = std::max(err, std::abs(s.at(edge - 1, y) - expected));
    mirror_err = std::max(mirror_err, std::abs(o.at(edge, y) - expected));
    for (int x = edge; x < w; ++x) low_side = std::max(low_side, double{s.at(x, y)});
    for (int x = 0; x < edge; ++x) mirror_other = std::max(mirror_other, double{o.at(x, y)});
  }
  DisparityMap inverted = d;
  for (float& v : inverted.values()) v = 1.0f - v;
  std::mt19937_64 rng(7);
  const DisparityMap r = t::RandomDisparity(64, 64, rng);
  DisparityMap r_inv = r;
  for (float& v : r_inv.values()) v = 1.0f - v;
  const bool symmetric = OcclusionMap(d, p) == DisocclusionMap(inverted, p) &&
                         OcclusionMap(r, p) == DisocclusionMap(r_inv, p);
  const bool pass = err <= 1e-6 && low_side == 0.0 && mirror_err <= 1e-6 &&
                    mirror_other == 0.0 && symmetric;
  return {pass, Fmt("|S(j=1) - tanh(2.95)| = %.2g, max S low side = %g, "
                    "mirror err = %.2g, max mirror other side = %g, "
                    "symmetry %s",
                    err, low_side, mirror_err, mirror_other,
                    symmetric ? "exact" : "BROKEN")};
}

Outcome VisibilityCases() {
  VisibilityParams p;
  const VisibilityMap flat = ComputeVisibility(DisparityMap(40, 30, 0.37f), p);
  const bool ones = std::all_of(flat.values().begin(), flat.values().end(),
                                [](float v) { return v == 1.0f; });

  const DisparityMap step = t::HalfPlane(40, 30, 20, 0.0f, 0.5f);
  const VisibilityMap a = ComputeVisibility(step, p);
  const double expected = std::exp(-100.0 * 0.25 * 0.25);
  double step_err = 0.0;
  for (int y = 0; y < 30; ++y) {
    step_err = std::max(step_err, std::abs(a.at(19, y) - expected));
    step_err = std::max(step_err, std::abs(a.at(20, y) - expected));
  }

  std::mt19937_64 rng(3);
  const DisparityMap r = t::RandomDisparity(64, 64, rng);
  VisibilityParams doubled;
  doubled.beta = 2.0 * p.beta;
  const VisibilityMap a1 = ComputeVisibility(r, p);
  const VisibilityMap a2 = ComputeVisibility(r, doubled);
  double square_err = 0.0;
  for (std::size_t i = 0; i < a1.values().size(); ++i) {
    const double v = a1.values()[i];
    square_err = std::max(square_err, std::abs(a2.values()[i] - v * v));
  }
  return {ones && step_err <= 1e-6 && square_err <= 1e-6,
          Fmt("constant D all ones: %s, step err = %.2g, beta-doubling err = %.2g",
              ones ? "yes" : "no", step_err, square_err)};
}

Outcome InpaintingContract() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  InpaintParams params;
  DisocclusionParams occ;
  int outside_bad = 0, quantile_bad = 0, max_principle_bad = 0, skipped = 0;
  std::size_t total_masked = 0;
  for (int scene_index = 0; scene_index < 100; ++scene_index) {
    const t::SyntheticScene s = t::RandomFgBgScene(96, 96, rng);
    const DisparityMap processed = PreprocessDisparity(s.disparity, 1.5f, 2);
    BinaryMask mask = BinarizeMask(DisocclusionMap(processed, occ), 0.5);
    if (mask.None()) {
      ++skipped;
      continue;
    }
    total_masked += mask.CountSet();
    const InpaintedBackground bg = InpaintRgbd(s.rgb, processed, mask, params);
    const InpaintAnchors anchors =
        FindAnchors(processed, mask, params.background_quantile);

    // (a) untouched outside the mask.
    bool outside_ok = true;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask.values()[i]) continue;
      if (bg.disparity.values()[i] != processed.values()[i]) outside_ok = false;
      for (int c = 0; c < 3; ++c) {
        if (bg.rgb.channel(c)[i] != s.rgb.channel(c)[i]) outside_ok = false;
      }
    }
    outside_bad += !outside_ok;

    // (b) filled disparity stays at or behind the background quantile.
    bool quantile_ok = true;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask.values()[i] &&
          bg.disparity.values()[i] > anchors.background_disparity + 1e-3) {
        quantile_ok = false;
      }
    }
    quantile_bad += !quantile_ok;

    // (c) filled values lie within the range of their Dirichlet data.
    bool range_ok = true;
    auto check = [&](std::span<const float> in, std::span<const float> out,
                     const std::vector<std::size_t>& data) {
      float lo = in[data.front()], hi = lo;
      for (std::size_t k : data) {
        lo = std::min(lo, in[k]);
        hi = std::max(hi, in[k]);
      }
      for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask.values()[i] && (out[i] < lo || out[i] > hi)) range_ok = false;
      }
    };
    check(processed.values(), bg.disparity.values(), anchors.depth_anchors);
    for (int c = 0; c < 3; ++c) {
      check(s.rgb.channel(c), bg.rgb.channel(c), anchors.color_anchors);
    }
    max_principle_bad += !range_ok;
  }
  const double secs = Seconds(start);
  const bool pass = outside_bad == 0 && quantile_bad == 0 &&
                    max_principle_bad == 0 && skipped < 100 && secs < 60.0;
  return {pass, Fmt("%d scenes solved (%zu masked px), violations: outside=%d "
                    "quantile=%d max-principle=%d, %.2f s",
                    100 - skipped, total_masked, outside_bad, quantile_bad,
                    max_principle_bad, secs)};
}

Outcome IdentityReconstruction() {
  std::string detail;
  bool pass = true;
  for (const std::string& name : t::TestPhotos()) {
    const Image rgb = LoadImage(t::DataDir() / (name + ".png"));
    const DisparityMap d = LoadDisparity(t::DataDir() / (name + "_disp.pfm"));
    ProcessResult result = ProcessImages(rgb, d, std::nullopt, PipelineConfig{});
    result.bundle.fg_visibility = VisibilityMap(rgb.width(), rgb.height(), 1.0f);
    const Image view = SynthesizeView(result.bundle, CameraPose::Identity());
    const double psnr = Psnr(view, rgb, 0.05);
    pass = pass && psnr >= 40.0;
    detail += Fmt("%s %.2f dB; ", name.c_str(), psnr);
  }
  return {pass, detail + "threshold 40 dB"};
}

// Sub-pixel horizontal shift s such that `moved(x) ~ base(x + s)`.
double MeasureShift(const Image& base, const Image& moved, int max_shift) {
  const int w = base.width(), h = base.height();
  const int margin = max_shift + 8;
  std::vector<double> score(2 * max_shift + 1);
  for (int s = -max_shift; s <= max_shift; ++s) {
    double sab = 0, saa = 0, sbb = 0, sa = 0, sb = 0;
    std::size_t n = 0;
    for (int c = 0; c < base.channels(); ++c) {
      for (int y = margin; y < h - margin; ++y) {
        for (int x = margin; x < w - margin; ++x) {
          const double a = moved.at(x, y, c);
          const double b = base.at(x + s, y, c);
          sab += a * b;
          saa += a * a;
          sbb += b * b;
          sa += a;
          sb += b;
          ++n;
        }
      }
    }
    const double cov = sab - sa * sb / n;
    const double va = saa - sa * sa / n;
    const double vb = sbb - sb * sb / n;
    score[s + max_shift] = cov / std::sqrt(va * vb);
  }
  const int best = static_cast<int>(
      std::max_element(score.begin(), score.end()) - score.begin());
  double offset = 0.0;
  if (best > 0 && best < static_cast<int>(score.size()) - 1) {
    const double l = score[best - 1], c = score[best], r = score[best + 1];
    const double denom = l - 2 * c + r;
    if (denom != 0.0) offset = 0.5 * (l - r) / denom;
  }
  return best - max_shift + offset;
}

Outcome PlanarParallax() {
  std::mt19937_64 rng(11);
  const int w = 160, h = 120;
  const Image texture = t::SmoothNoise(w, h, 3, 2.0f, rng);
  const struct {
    double t, d;
  } cases[] = {{0.05, 0.5}, {0.1, 0.5}, {0.02, 1.0}, {0.1, 0.25}, {-0.08, 0.8}};
  double worst = 0.0;
  std::string detail;
  for (const auto& c : cases) {
    LayerBundle b;
    b.fg_rgb = texture;
    b.bg_rgb = texture;
    b.fg_visibility = VisibilityMap(w, h, 1.0f);
    b.fg_disparity = DisparityMap(w, h, static_cast<float>(c.d));
    b.bg_disparity = b.fg_disparity;
    b.intrinsics = CameraIntrinsics::Default(w, h);
    CameraPose pose;
    pose.translation = Eigen::Vector3d(-c.t, 0.0, 0.0);  // camera center at +t
    const Image view = SynthesizeView(b, pose);
    const double predicted = b.intrinsics.fx * c.t * c.d;
    const double measured = MeasureShift(texture, view, 12);
    worst = std::max(worst, std::abs(measured - predicted));
    detail += Fmt("(t=%g,d=%g: %.3f vs %.3f) ", c.t, c.d, measured, predicted);
  }
  return {worst <= 0.5, detail + Fmt("max error %.3f px", worst)};
}

Outcome MetricsCorrectness() {
  std::mt19937_64 rng(5);
  Image a = t::SmoothNoise(64, 48, 3, 1.0f, rng);
  for (float& v : a.data()) v *= 0.9f;
  Image b = a;
  for (float& v : b.data()) v += 0.1f;
  const double psnr = Psnr(a, b, 0.0);
  const double ssim = Ssim(a, a, 0.0);
  const double ssim_cropped = Ssim(a, a);

  // Corrupt only the 20% border band: invisible to the cropped metrics.
  Image border = a;
  const int cx = static_cast<int>(std::floor(0.2 * 64));
  const int cy = static_cast<int>(std::floor(0.2 * 48));
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < 48; ++y) {
      for (int x = 0; x < 64; ++x) {
        const bool inside = x >= cx && x < 64 - cx && y >= cy && y < 48 - cy;
        if (!inside) border.at(x, y, c) = 1.0f - border.at(x, y, c);
      }
    }
  }
  const double border_psnr = Psnr(a, border);
  const double border_ssim = Ssim(a, border);
  Image interior = a;
  interior.at(cx, cy, 0) += 0.05f;
  const double interior_psnr = Psnr(a, interior);

  const bool pass = std::abs(psnr - 20.0) <= 1e-4 &&
                    std::abs(ssim - 1.0) <= 1e-9 &&
                    std::abs(ssim_cropped - 1.0) <= 1e-9 &&
                    border_psnr == kPsnrCapDb &&
                    std::abs(border_ssim - 1.0) <= 1e-9 &&
                    interior_psnr < kPsnrCapDb;
  return {pass, Fmt("offset PSNR %.6f dB, SSIM(a,a) %.12f, border-only "
                    "corruption: PSNR %.1f SSIM %.9f, first interior pixel "
                    "corrupted: PSNR %.2f",
                    psnr, ssim, border_psnr, border_ssim, interior_psnr)};
}

Outcome BundleRoundTrip() {
  std::mt19937_64 rng(8);
  const int w = 70, h = 50;
  LayerBundle b;
  b.fg_rgb = t::SmoothNoise(w, h, 3, 0.5f, rng);
  b.bg_rgb = t::SmoothNoise(w, h, 3, 0.5f, rng);
  b.fg_visibility = VisibilityMap(t::SmoothNoise(w, h, 1, 0.5f, rng));
  b.fg_disparity = t::RandomDisparity(w, h, rng);
  b.bg_disparity = t::RandomDisparity(w, h, rng);
  b.intrinsics = CameraIntrinsics::Default(w, h);
  t::TempDir dir("accept_bundle");
  ExportBundle(b, dir.path());
  const LayerBundle r = LoadBundle(dir.path());
  const bool disp_exact =
      r.fg_disparity == b.fg_disparity && r.bg_disparity == b.bg_disparity;
  const double q = std::max({MaxAbsDiff(r.fg_rgb, b.fg_rgb),
                             MaxAbsDiff(r.bg_rgb, b.bg_rgb),
                             MaxAbsDiff(r.fg_visibility, b.fg_visibility)});
  const bool pass = disp_exact && q <= 1.0 / 65535.0 &&
                    r.intrinsics == b.intrinsics &&
                    r.mapping.d_min == b.mapping.d_min;
  return {pass, Fmt("disparity bit-exact: %s, max 16-bit error %.3g (bound "
                    "%.3g), intrinsics preserved: %s",
                    disp_exact ? "yes" : "no", q, 1.0 / 65535.0,
                    r.intrinsics == b.intrinsics ? "yes" : "no")};
}

// Synthetic 1008x672 input built from a test photo and its disparity.
void WriteLargeInputs(const std::filesystem::path& dir) {
  const Image photo = LoadImage(t::DataDir() / "astronaut.png");
  const DisparityMap disp = LoadDisparity(t::DataDir() / "astronaut_disp.pfm");
  SavePng(dir / "image.png", ResizeBilinear(photo, 1008, 672), 8);
  SavePfm(dir / "disparity.pfm", ResizeBilinear(disp, 1008, 672));
}

Outcome Performance() {
  t::TempDir dir("accept_perf");
  WriteLargeInputs(dir.path());
  const DisparityMap disp = LoadDisparity(dir / "disparity.pfm");
  DisocclusionParams p;  // m = 64
  double best_layering = 1e9;
  for (int rep = 0; rep < 3; ++rep) {
    const auto start = Clock::now();
    const DisparityMap processed = PreprocessDisparity(disp, 1.5f, 2);
    const VisibilityMap a = ComputeVisibility(processed, {});
    const SoftMask s = DisocclusionMap(processed, p);
    const SoftMask o = OcclusionMap(processed, p);
    best_layering = std::min(best_layering, 1e3 * Seconds(start));
  }

  PipelineConfig config;
  config.image = dir / "image.png";
  config.disparity = dir / "disparity.pfm";
  config.output_dir = dir / "bundle";
  const auto start = Clock::now();
  const ProcessResult result = Process(config);
  ExportBundle(result.bundle, config.output_dir);
  CameraPathParams path;
  path.frame_count = 8;
  const std::vector<CameraPose> poses = CircularPath(path);
  RenderPath(result.bundle, {poses[1]}, dir / "frames");
  const double end_to_end = Seconds(start);
  return {best_layering <= 500.0 && end_to_end <= 10.0,
          Fmt("soft layering %.1f ms (limit 500), process + export + one "
              "frame %.2f s (limit 10; inpainting %.0f ms, %d sweeps) at "
              "1008x672",
              best_layering, end_to_end, result.timings.inpainting_ms,
              result.inpaint_iterations)};
}

// Process, export, render three frames, emit masks and a metrics report.
void EndToEnd(const std::filesystem::path& out) {
  PipelineConfig config;
  config.image = t::DataDir() / "chelsea.png";
  config.disparity = t::DataDir() / "chelsea_disp.pfm";
  config.output_dir = out / "bundle";
  const ProcessResult result = Process(config);
  ExportBundle(result.bundle, config.output_dir);
  CameraPathParams path;
  path.frame_count = 3;
  RenderPath(result.bundle, CircularPath(path), out / "frames");
  RenderPath(result.bundle, {CameraPose::Identity(), CameraPose::Identity(),
                             CameraPose::Identity()},
             out / "identity");

  MaskDatasetOptions options;
  for (int k = 0; k < 6; ++k) {
    MaskRng rng(options.seed + k);
    const TrainingMask m =
        GenerateTrainingMask(result.bundle.fg_disparity, options, rng);
    SaveMaskPng(out / Fmt("mask_%d_%s.png", k, std::string(MaskKindName(m.kind)).c_str()),
                m.mask);
  }
  const MetricsReport report = EvaluateDirectories(out / "frames", out / "identity");
  std::ofstream(out / "metrics.json") << report.ToJson().dump(2);
}

Outcome Determinism() {
  t::TempDir a("accept_det_a"), b("accept_det_b");
  EndToEnd(a.path());
  EndToEnd(b.path());
  std::size_t files = 0, differing = 0;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(a.path())) {
    if (!entry.is_regular_file()) continue;
    const auto rel = std::filesystem::relative(entry.path(), a.path());
    ++files;
    if (t::ReadBytes(entry.path()) != t::ReadBytes(b.path() / rel)) ++differing;
  }
  std::size_t files_b = 0;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(b.path())) {
    files_b += entry.is_regular_file();
  }
  return {differing == 0 && files == files_b && files > 0,
          Fmt("%zu files compared (bundle, frames, masks, metrics report), "
              "%zu differ",
              files, differing)};
}

}  // namespace
}  // namespace softlayer

int main() {
  using softlayer::Outcome;
  const struct {
    int id;
    const char* name;
    std::function<Outcome()> run;
  } criteria[] = {
      {1, "disocclusion oracle equivalence", softlayer::OracleEquivalence},
      {2, "layering analytic cases", softlayer::HalfPlaneLayering},
      {3, "visibility", softlayer::VisibilityCases},
      {4, "depth-aware inpainting contract", softlayer::InpaintingContract},
      {5, "identity-view reconstruction", softlayer::IdentityReconstruction},
      {6, "planar parallax", softlayer::PlanarParallax},
      {7, "metrics correctness", softlayer::MetricsCorrectness},
      {8, "bundle round trip", softlayer::BundleRoundTrip},
      {9, "performance", softlayer::Performance},
      {10, "determinism", softlayer::Determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += !outcome.pass;
    std::printf("%s  %2d %s: %s\n", outcome.pass ? "PASS" : "FAIL", c.id,
                c.name, outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(std::size(criteria)) - failures,
              std::size(criteria));
  return failures == 0 ? 0 : 1;
}
