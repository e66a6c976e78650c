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

#ifndef SOFTLAYER_INPAINTING_H_
#define SOFTLAYER_INPAINTING_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "softlayer/image.h"

namespace softlayer {

struct InpaintParams {
  double mask_threshold = 0.5;
  int max_iterations = 5000;       // relaxation sweeps per pyramid level
  double convergence_tol = 1e-5;   // max per-pixel change that ends a level
  double depth_guidance_strength = 50.0;
  double background_quantile = 0.3;

  void Validate() const;
};

struct InpaintedBackground {
  Image rgb;
  DisparityMap disparity;
  bool converged = true;
  int iterations = 0;  // sweeps at full resolution, larger of the two phases
  double background_disparity = 0.0;  // the quantile d_bg
};

// Source pixels (mask 0) 4-adjacent to the mask, split by role.
struct InpaintAnchors {
  std::vector<std::size_t> boundary;
  double background_disparity = 0.0;
  // Dirichlet pixels of the disparity phase: boundary disparity <= d_bg.
  std::vector<std::size_t> depth_anchors;
  // Dirichlet pixels of the color phase: boundary disparity <= d_bg + 1e-3.
  std::vector<std::size_t> color_anchors;
  // Fallback anchors of components that touch no pixel at or behind d_bg.
  // They appear in both lists above; the disparity phase pins them to d_bg.
  std::vector<std::size_t> lowered_anchors;
};

// 1 where s >= tau. Throws kNoSourcePixels if every pixel is selected.
BinaryMask BinarizeMask(const SoftMask& soft, double tau);

// Boundary analysis shared by the solver and its tests. Masked components
// without any qualifying anchor fall back to their minimum-disparity boundary
// pixel (see lowered_anchors). Throws kNoSourcePixels if the mask has no source boundary.
InpaintAnchors FindAnchors(const DisparityMap& disparity,
                           const BinaryMask& mask, double background_quantile);

// Two-phase depth-guided diffusion. The disparity is solved first, anchored
// only on background-side boundary pixels; color then diffuses with edge
// weights exp(-lambda |dD|) from the background-side anchors. Pixels outside
// the mask are copied bit-exactly.
InpaintedBackground InpaintRgbd(const Image& rgb, const DisparityMap& disparity,
                                const BinaryMask& mask,
                                const InpaintParams& params);

// Takes masked pixels from an externally inpainted pair and the rest from the
// originals.
InpaintedBackground SpliceInpaint(const Image& inpainted_rgb,
                                  const DisparityMap& inpainted_disparity,
                                  const BinaryMask& mask,
                                  const Image& original_rgb,
                                  const DisparityMap& original_disparity);

InpaintedBackground InjectExternalInpaint(
    const std::filesystem::path& rgb_path,
    const std::filesystem::path& disparity_path, const BinaryMask& mask,
    const Image& original_rgb, const DisparityMap& original_disparity);

}  // namespace softlayer

#endif  // SOFTLAYER_INPAINTING_H_
