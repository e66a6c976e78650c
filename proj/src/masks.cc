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

#include "softlayer/masks.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "softlayer/error.h"

namespace softlayer {
namespace {

double Uniform01(MaskRng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double UniformReal(MaskRng& rng, double lo, double hi) {
  return lo + (hi - lo) * Uniform01(rng);
}

int UniformInt(MaskRng& rng, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(rng() % span);
}

void StampDisk(BinaryMask& mask, double cx, double cy, double radius) {
  const int x0 = std::max(0, static_cast<int>(std::floor(cx - radius)));
  const int x1 = std::min(mask.width() - 1, static_cast<int>(std::ceil(cx + radius)));
  const int y0 = std::max(0, static_cast<int>(std::floor(cy - radius)));
  const int y1 = std::min(mask.height() - 1, static_cast<int>(std::ceil(cy + radius)));
  const double r2 = radius * radius;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const double dx = x - cx;
      const double dy = y - cy;
      if (dx * dx + dy * dy <= r2) mask.at(x, y) = 1;
    }
  }
}

}  // namespace

void MaskDatasetOptions::Validate() const {
  occlusion_params.Validate();
  const bool ok = stroke_count.min >= 0 && stroke_count.min <= stroke_count.max &&
                  segments_per_stroke.min >= 1 &&
                  segments_per_stroke.min <= segments_per_stroke.max &&
                  stroke_width.min > 0.0 && stroke_width.min <= stroke_width.max &&
                  stroke_length.min >= 0.0 &&
                  stroke_length.min <= stroke_length.max &&
                  max_turn >= 0.0 && mix_ratio >= 0.0 && mix_ratio <= 1.0 &&
                  mask_threshold > 0.0 && mask_threshold < 1.0;
  if (!ok) {
    throw Error(ErrorCode::kInvalidArgument, "invalid mask dataset options");
  }
}

std::string_view MaskKindName(MaskKind kind) {
  switch (kind) {
    case MaskKind::kOcclusion:
      return "occlusion";
    case MaskKind::kStroke:
      return "stroke";
    case MaskKind::kStrokeFallback:
      return "stroke_fallback";
  }
  return "unknown";
}

BinaryMask RandomStrokeMask(int width, int height, const MaskDatasetOptions& options,
                            MaskRng& rng) {
  options.Validate();
  BinaryMask mask(width, height);
  if (width < 1 || height < 1) return mask;
  const int strokes = UniformInt(rng, options.stroke_count.min, options.stroke_count.max);
  for (int s = 0; s < strokes; ++s) {
    double x = UniformInt(rng, 0, width - 1);
    double y = UniformInt(rng, 0, height - 1);
    double heading = UniformReal(rng, 0.0, 2.0 * std::numbers::pi);
    const double radius =
        0.5 * UniformReal(rng, options.stroke_width.min, options.stroke_width.max);
    const int segments = UniformInt(rng, options.segments_per_stroke.min,
                                    options.segments_per_stroke.max);
    StampDisk(mask, x, y, radius);
    for (int k = 0; k < segments; ++k) {
      heading += UniformReal(rng, -options.max_turn, options.max_turn);
      const double length =
          UniformReal(rng, options.stroke_length.min, options.stroke_length.max);
      const double nx = std::clamp(x + length * std::cos(heading), 0.0, width - 1.0);
      const double ny = std::clamp(y + length * std::sin(heading), 0.0, height - 1.0);
      const int steps = std::max(1, static_cast<int>(std::ceil(std::hypot(nx - x, ny - y))));
      for (int i = 1; i <= steps; ++i) {
        const double t = static_cast<double>(i) / steps;
        StampDisk(mask, x + t * (nx - x), y + t * (ny - y), radius);
      }
      x = nx;
      y = ny;
    }
  }
  return mask;
}

TrainingMask GenerateTrainingMask(const DisparityMap& disparity,
                                  const MaskDatasetOptions& options, MaskRng& rng) {
  options.Validate();
  const bool want_occlusion = Uniform01(rng) < options.mix_ratio;
  if (want_occlusion) {
    const SoftMask occlusion = OcclusionMap(disparity, options.occlusion_params);
    BinaryMask mask(disparity.width(), disparity.height());
    auto out = mask.values();
    auto in = occlusion.values();
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = in[i] >= options.mask_threshold ? 1 : 0;
    }
    if (!mask.None()) return {std::move(mask), MaskKind::kOcclusion};
    return {RandomStrokeMask(disparity.width(), disparity.height(), options, rng),
            MaskKind::kStrokeFallback};
  }
  return {RandomStrokeMask(disparity.width(), disparity.height(), options, rng),
          MaskKind::kStroke};
}

}  // namespace softlayer
